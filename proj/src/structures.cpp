#include "structshift/structures.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "structshift/error.hpp"

namespace structshift {

namespace {

std::string first_duplicate(const std::vector<std::string>& labels) {
    std::unordered_set<std::string> seen;
    for (const auto& label : labels) {
        if (!seen.insert(label).second) return label;
    }
    return {};
}

}  // namespace

FrequencyTable::FrequencyTable(std::vector<std::string> categories,
                               std::vector<std::string> populations,
                               std::vector<std::vector<double>> counts)
    : categories_(std::move(categories)),
      populations_(std::move(populations)),
      counts_(std::move(counts)) {
    if (categories_.empty()) throw DataError("frequency table has no categories");
    if (populations_.empty()) throw DataError("frequency table has no populations");
    for (const auto& c : categories_) {
        if (c.empty()) throw DataError("empty category label");
    }
    for (const auto& p : populations_) {
        if (p.empty()) throw DataError("empty population identifier");
    }
    if (auto dup = first_duplicate(categories_); !dup.empty())
        throw DataError("duplicate category label '" + dup + "'");
    if (auto dup = first_duplicate(populations_); !dup.empty())
        throw DataError("duplicate population identifier '" + dup + "'");
    if (counts_.size() != populations_.size())
        throw DataError("counts matrix has " + std::to_string(counts_.size()) +
                        " columns, expected " + std::to_string(populations_.size()));

    totals_.reserve(populations_.size());
    for (std::size_t p = 0; p < populations_.size(); ++p) {
        const auto& column = counts_[p];
        if (column.size() != categories_.size())
            throw DataError("population '" + populations_[p] + "' has " +
                            std::to_string(column.size()) + " values, expected " +
                            std::to_string(categories_.size()));
        double total = 0.0;
        for (std::size_t c = 0; c < column.size(); ++c) {
            if (!std::isfinite(column[c]) || column[c] < 0.0)
                throw DataError("population '" + populations_[p] + "', category '" +
                                categories_[c] + "': count must be finite and >= 0");
            total += column[c];
        }
        if (!(total > 0.0))
            throw DataError("population '" + populations_[p] + "' has zero total");
        totals_.push_back(total);
    }
}

std::optional<std::size_t> FrequencyTable::population_index(const std::string& id) const {
    for (std::size_t i = 0; i < populations_.size(); ++i) {
        if (populations_[i] == id) return i;
    }
    return std::nullopt;
}

const std::vector<double>& FrequencyTable::counts(const std::string& population) const {
    auto idx = population_index(population);
    if (!idx) throw DataError("unknown population '" + population + "'");
    return counts_[*idx];
}

StructureVector::StructureVector(std::vector<std::string> categories, std::vector<double> shares)
    : categories_(std::move(categories)), shares_(std::move(shares)) {
    if (auto verdict = validate(categories_, shares_); !verdict)
        throw DataError("invalid structure vector: " + verdict.message);
}

const char* to_string(Violation v) noexcept {
    switch (v) {
        case Violation::none: return "none";
        case Violation::empty: return "empty";
        case Violation::size_mismatch: return "size_mismatch";
        case Violation::empty_label: return "empty_label";
        case Violation::duplicate_label: return "duplicate_label";
        case Violation::non_finite_share: return "non_finite_share";
        case Violation::share_out_of_range: return "share_out_of_range";
        case Violation::sum_not_one: return "sum_not_one";
    }
    return "unknown";
}

ValidationVerdict validate(const std::vector<std::string>& categories,
                           const std::vector<double>& shares) {
    if (shares.empty()) return {Violation::empty, "no categories"};
    if (categories.size() != shares.size())
        return {Violation::size_mismatch,
                std::to_string(categories.size()) + " labels for " +
                    std::to_string(shares.size()) + " shares"};
    for (const auto& c : categories) {
        if (c.empty()) return {Violation::empty_label, "empty category label"};
    }
    if (auto dup = first_duplicate(categories); !dup.empty())
        return {Violation::duplicate_label, "duplicate category label '" + dup + "'"};
    double sum = 0.0;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        if (!std::isfinite(shares[i]))
            return {Violation::non_finite_share, "share of '" + categories[i] + "' is not finite"};
        if (shares[i] < 0.0 || shares[i] > 1.0)
            return {Violation::share_out_of_range,
                    "share of '" + categories[i] + "' is outside [0,1]"};
        sum += shares[i];
    }
    if (std::abs(sum - 1.0) > kNormTolerance)
        return {Violation::sum_not_one, "shares sum to " + std::to_string(sum) + ", not 1"};
    return {};
}

ValidationVerdict validate(const StructureVector& v) {
    return validate(v.categories(), v.shares());
}

StructureVector normalize(const FrequencyTable& table, const std::string& population) {
    auto idx = table.population_index(population);
    if (!idx) throw DataError("unknown population '" + population + "'");
    const auto& counts = table.counts(*idx);
    const double total = table.total(*idx);
    // Columns that already are shares are kept verbatim.
    if (std::abs(total - 1.0) <= kNormTolerance) return StructureVector(table.categories(), counts);
    std::vector<double> shares;
    shares.reserve(counts.size());
    for (double c : counts) shares.push_back(c / total);
    return StructureVector(table.categories(), std::move(shares));
}

AlignedPair align(const StructureVector& x, const StructureVector& y) {
    if (x.categories() == y.categories()) return {x, y};

    std::vector<std::string> labels = x.categories();
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < labels.size(); ++i) position.emplace(labels[i], i);
    for (const auto& label : y.categories()) {
        if (position.emplace(label, labels.size()).second) labels.push_back(label);
    }

    auto scatter = [&](const StructureVector& v) {
        std::vector<double> shares(labels.size(), 0.0);
        for (std::size_t i = 0; i < v.k(); ++i) shares[position.at(v.categories()[i])] = v.share(i);
        return StructureVector(labels, std::move(shares));
    };
    return {scatter(x), scatter(y)};
}

}  // namespace structshift
