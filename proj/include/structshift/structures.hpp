#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace structshift {

/// Tolerance on the share sum of a structure vector.
inline constexpr double kNormTolerance = 1e-9;

/// Tolerance accepted when a column is ingested as ready-made shares.
inline constexpr double kSharesInputTolerance = 1e-6;

/// Labeled nonnegative counts for several populations over one category list.
///
/// Counts are reals so pre-aggregated volumes (sales, market shares) can be
/// used directly. Construction validates the whole matrix.
class FrequencyTable {
public:
    /// counts[p][c] is the count of category c in population p.
    FrequencyTable(std::vector<std::string> categories,
                   std::vector<std::string> populations,
                   std::vector<std::vector<double>> counts);

    const std::vector<std::string>& categories() const noexcept { return categories_; }
    const std::vector<std::string>& populations() const noexcept { return populations_; }
    const std::vector<double>& counts(std::size_t population) const { return counts_.at(population); }
    double total(std::size_t population) const { return totals_.at(population); }

    std::optional<std::size_t> population_index(const std::string& id) const;
    const std::vector<double>& counts(const std::string& population) const;

    bool operator==(const FrequencyTable&) const = default;

private:
    std::vector<std::string> categories_;
    std::vector<std::string> populations_;
    std::vector<std::vector<double>> counts_;
    std::vector<double> totals_;
};

/// Relative shares of each category in one population (the simple structure).
class StructureVector {
public:
    /// Throws DataError unless the result satisfies every invariant.
    StructureVector(std::vector<std::string> categories, std::vector<double> shares);

    const std::vector<std::string>& categories() const noexcept { return categories_; }
    const std::vector<double>& shares() const noexcept { return shares_; }
    std::size_t k() const noexcept { return shares_.size(); }
    double share(std::size_t i) const { return shares_.at(i); }

    bool operator==(const StructureVector&) const = default;

private:
    std::vector<std::string> categories_;
    std::vector<double> shares_;
};

/// Two structure vectors over the same categories in the same order.
struct AlignedPair {
    StructureVector x;
    StructureVector y;

    std::size_t k() const noexcept { return x.k(); }
    const std::vector<std::string>& categories() const noexcept { return x.categories(); }
};

enum class Violation {
    none,
    empty,
    size_mismatch,
    empty_label,
    duplicate_label,
    non_finite_share,
    share_out_of_range,
    sum_not_one,
};

struct ValidationVerdict {
    Violation violation = Violation::none;
    std::string message;

    bool ok() const noexcept { return violation == Violation::none; }
    explicit operator bool() const noexcept { return ok(); }
};

/// Checks the structure-vector invariants on raw parts and reports the first
/// one that fails. Never throws.
ValidationVerdict validate(const std::vector<std::string>& categories,
                           const std::vector<double>& shares);
ValidationVerdict validate(const StructureVector& v);

const char* to_string(Violation v) noexcept;

/// share_i = count_i / total for the named population.
StructureVector normalize(const FrequencyTable& table, const std::string& population);

/// Union of both category lists (x order, then labels new in y); a category
/// missing from one side gets share 0 there.
AlignedPair align(const StructureVector& x, const StructureVector& y);

}  // namespace structshift
