#include "structshift/sokolowski.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "structshift/error.hpp"
#include "structshift/similarity.hpp"

namespace structshift {

namespace detail {
extern const std::string_view kEmbeddedCvTable;
}

namespace {

constexpr double kAlphaMatch = 1e-12;

// SplitMix64 (Steele, Lea & Flood). Used both as the per-replicate seed mixer
// and as the replicate's own stream.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    std::uint64_t next() noexcept { return mix64(state_ += 0x9E3779B97F4A7C15ULL); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double unit_exponential() noexcept { return -std::log1p(-uniform()); }

private:
    std::uint64_t state_;
};

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t replicate) noexcept {
    return mix64(seed ^ mix64(replicate + 0x632BE59BD9B4E019ULL));
}

// Fills `out` with a flat-simplex composition; returns false in the
// (practically impossible) all-zero case.
bool draw_composition(SplitMix64& rng, std::vector<double>& out) {
    double sum = 0.0;
    for (auto& v : out) {
        v = rng.unit_exponential();
        sum += v;
    }
    if (!(sum > 0.0)) return false;
    for (auto& v : out) v /= sum;
    return true;
}

double null_replicate(int k, std::uint64_t seed, std::uint64_t replicate) {
    SplitMix64 rng(replicate_seed(seed, replicate));
    std::vector<double> x(static_cast<std::size_t>(k));
    std::vector<double> y(static_cast<std::size_t>(k));
    while (!draw_composition(rng, x)) {}
    while (!draw_composition(rng, y)) {}
    double omega = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) omega += std::min(x[i], y[i]);
    return omega;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UsageError("alpha must lie in (0,1) (got " + std::to_string(alpha) + ")");
}

void check_k(int k) {
    if (k < 2)
        throw UsageError("the similarity test needs k >= 2 categories (got " + std::to_string(k) + ")");
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

const char* to_string(CvPolicy p) noexcept {
    switch (p) {
        case CvPolicy::embedded_only: return "embedded";
        case CvPolicy::embedded_then_mc: return "embedded-then-mc";
        case CvPolicy::mc_only: return "mc";
    }
    return "?";
}

const char* to_string(CvKind k) noexcept {
    switch (k) {
        case CvKind::embedded: return "embedded";
        case CvKind::external_table: return "external_table";
        case CvKind::monte_carlo: return "monte_carlo";
    }
    return "?";
}

const char* to_string(Decision d) noexcept {
    return d == Decision::similar ? "similar" : "not_similar";
}

CriticalValueTable CriticalValueTable::parse(std::string_view text, std::string origin) {
    CriticalValueTable table;
    table.origin_ = std::move(origin);
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            constexpr std::string_view tag = "version:";
            const auto rest = trim(std::string_view(body).substr(1));
            if (rest.rfind(tag, 0) == 0) table.version_ = trim(std::string_view(rest).substr(tag.size()));
            continue;
        }
        std::string normalized = body;
        std::replace(normalized.begin(), normalized.end(), ',', ' ');
        std::istringstream fields(normalized);
        std::string a, k, z, extra;
        fields >> a >> k >> z;
        if (z.empty() || (fields >> extra))
            throw DataError(table.origin_ + ":" + std::to_string(line_no) +
                            ": expected three columns 'alpha k z'");
        Row row{};
        auto parse_num = [&](const std::string& s, auto& out, const char* what) {
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw DataError(table.origin_ + ":" + std::to_string(line_no) + ": bad " + what +
                                " '" + s + "'");
        };
        parse_num(a, row.alpha, "alpha");
        parse_num(k, row.k, "k");
        parse_num(z, row.z, "z");
        if (!(row.alpha > 0.0 && row.alpha < 1.0) || row.k < 2 || !(row.z > 0.0 && row.z < 1.0))
            throw DataError(table.origin_ + ":" + std::to_string(line_no) +
                            ": need alpha in (0,1), k >= 2, z in (0,1)");
        table.rows_.push_back(row);
    }
    return table;
}

CriticalValueTable CriticalValueTable::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read critical-value table '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

const CriticalValueTable& CriticalValueTable::embedded() {
    static const CriticalValueTable table = [] {
        auto t = parse(detail::kEmbeddedCvTable, "embedded");
        t.origin_ = "embedded:v" + (t.version_.empty() ? std::string("0") : t.version_);
        return t;
    }();
    return table;
}

std::optional<double> CriticalValueTable::lookup(double alpha, int k) const {
    for (const auto& row : rows_) {
        if (row.k == k && std::abs(row.alpha - alpha) <= kAlphaMatch) return row.z;
    }
    return std::nullopt;
}

std::vector<double> null_similarity_sample(int k, const MonteCarloConfig& config) {
    check_k(k);
    if (config.replicates == 0) throw UsageError("Monte Carlo needs at least one replicate");

    std::vector<double> sample(config.replicates);
    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.replicates));

    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t r = begin; r < end; ++r) sample[r] = null_replicate(k, config.seed, r);
    };
    if (threads <= 1) {
        work(0, config.replicates);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        const std::uint64_t chunk = (config.replicates + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t begin = t * chunk;
            const std::uint64_t end = std::min(config.replicates, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
    }
    std::sort(sample.begin(), sample.end());
    return sample;
}

double nearest_rank_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw UsageError("quantile of an empty sample");
    if (!(p > 0.0 && p <= 1.0)) throw UsageError("quantile level must lie in (0,1]");
    const auto n = static_cast<double>(sorted.size());
    // The slack absorbs representation error in p*n (0.95 * 1e5 must give 95000).
    auto rank = static_cast<std::size_t>(std::ceil(p * n - 1e-9 * n));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

std::vector<CriticalValueSource> monte_carlo_critical_values(std::span<const double> alphas, int k,
                                                             const MonteCarloConfig& config) {
    for (double a : alphas) check_alpha(a);
    const auto sample = null_similarity_sample(k, config);
    std::vector<CriticalValueSource> out;
    out.reserve(alphas.size());
    for (double a : alphas) {
        CriticalValueSource src;
        src.kind = CvKind::monte_carlo;
        src.alpha = a;
        src.k = k;
        src.value = nearest_rank_quantile(sample, 1.0 - a);
        src.mc = MonteCarloMeta{config.replicates, config.seed, std::string(kFlatSimplexNull)};
        src.origin = "monte_carlo";
        out.push_back(std::move(src));
    }
    return out;
}

CriticalValueSource critical_value(double alpha, int k, CvPolicy policy,
                                   const MonteCarloConfig& config,
                                   const CriticalValueTable* external) {
    check_alpha(alpha);
    check_k(k);

    if (policy != CvPolicy::mc_only) {
        if (external) {
            if (auto z = external->lookup(alpha, k))
                return {CvKind::external_table, alpha, k, *z, std::nullopt, external->origin()};
        }
        const auto& table = CriticalValueTable::embedded();
        if (auto z = table.lookup(alpha, k))
            return {CvKind::embedded, alpha, k, *z, std::nullopt, table.origin()};
        if (policy == CvPolicy::embedded_only) {
            std::ostringstream msg;
            msg << "no tabulated critical value for alpha=" << alpha << ", k=" << k
                << " (use a Monte Carlo policy or supply a table)";
            throw UsageError(msg.str());
        }
    }
    const double alphas[] = {alpha};
    return monte_carlo_critical_values(alphas, k, config).front();
}

TestOutcome decide(double omega_p, CriticalValueSource critical) {
    const auto decision = omega_p > critical.value ? Decision::similar : Decision::not_similar;
    return {omega_p, std::move(critical), decision};
}

TestOutcome run_test(const AlignedPair& pair, double alpha, CvPolicy policy,
                     const MonteCarloConfig& config, const CriticalValueTable* external) {
    const auto k = static_cast<int>(pair.k());
    auto critical = critical_value(alpha, k, policy, config, external);
    return decide(similarity_index(pair).omega_p, std::move(critical));
}

}  // namespace structshift
