#pragma once

// Similarity-of-structures hypothesis test.
//
// H0: the similarity of the two structures is random (they are dissimilar).
// H1: the similarity is non-random (they are similar).
// H0 is rejected, and the structures declared similar, when the empirical
// omega_p falls in the open critical area (z_{alpha,k}, +inf). Note the roles
// are inverted relative to the usual "H0 = no difference" convention: failing
// to reject means "not shown to be similar".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structshift/structures.hpp"

namespace structshift {

enum class CvPolicy { embedded_only, embedded_then_mc, mc_only };
enum class CvKind { embedded, external_table, monte_carlo };

const char* to_string(CvPolicy p) noexcept;
const char* to_string(CvKind k) noexcept;

/// Identifier of the Monte Carlo null model: two independent compositions
/// drawn uniformly on the k-simplex (normalized unit exponentials).
inline constexpr std::string_view kFlatSimplexNull = "flat_simplex_v1";

struct MonteCarloConfig {
    std::uint64_t replicates = 1'000'000;
    std::uint64_t seed = 0;
    /// 0 selects std::thread::hardware_concurrency(). Never affects results.
    unsigned threads = 0;
};

struct MonteCarloMeta {
    std::uint64_t replicates = 0;
    std::uint64_t seed = 0;
    std::string null_model;
};

struct CriticalValueSource {
    CvKind kind = CvKind::embedded;
    double alpha = 0.0;
    int k = 0;
    double value = 0.0;
    /// Set for monte_carlo only.
    std::optional<MonteCarloMeta> mc;
    /// Where a tabulated value came from ("embedded:v1", a file path, ...).
    std::string origin;
};

/// Rows of (alpha, k, z). Text format: three decimal columns separated by
/// whitespace or commas; lines starting with '#' are comments.
class CriticalValueTable {
public:
    struct Row {
        double alpha;
        int k;
        double z;
    };

    static CriticalValueTable parse(std::string_view text, std::string origin);
    static CriticalValueTable from_file(const std::filesystem::path& path);
    /// The table compiled into the library.
    static const CriticalValueTable& embedded();

    std::optional<double> lookup(double alpha, int k) const;
    const std::vector<Row>& rows() const noexcept { return rows_; }
    const std::string& origin() const noexcept { return origin_; }
    const std::string& version() const noexcept { return version_; }

private:
    std::vector<Row> rows_;
    std::string origin_;
    std::string version_;
};

/// Sorted omega_p values of `config.replicates` draws from the null model.
/// Replicate i is seeded from (seed, i) alone, so the sample is identical for
/// any thread count.
std::vector<double> null_similarity_sample(int k, const MonteCarloConfig& config);

/// Nearest-rank quantile: the ceil(p*n)-th smallest value (1-based).
double nearest_rank_quantile(std::span<const double> sorted, double p);

/// Critical values for several alphas computed from one common null sample.
std::vector<CriticalValueSource> monte_carlo_critical_values(std::span<const double> alphas, int k,
                                                             const MonteCarloConfig& config);

/// z_{alpha,k}. `external`, if given, is consulted before the embedded table.
/// Throws UsageError for alpha outside (0,1), k < 2, or a missing tabulated
/// value under embedded_only. Never interpolates.
CriticalValueSource critical_value(double alpha, int k, CvPolicy policy,
                                   const MonteCarloConfig& config = {},
                                   const CriticalValueTable* external = nullptr);

enum class Decision { similar, not_similar };
const char* to_string(Decision d) noexcept;

struct TestOutcome {
    double omega_p_empirical = 0.0;
    CriticalValueSource critical;
    Decision decision = Decision::not_similar;
};

/// similar iff omega_p > critical.value (strict).
TestOutcome decide(double omega_p, CriticalValueSource critical);

TestOutcome run_test(const AlignedPair& pair, double alpha, CvPolicy policy,
                     const MonteCarloConfig& config = {},
                     const CriticalValueTable* external = nullptr);

}  // namespace structshift
