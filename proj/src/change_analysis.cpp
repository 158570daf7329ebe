#include "structshift/change_analysis.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "structshift/error.hpp"
#include "structshift/similarity.hpp"

namespace structshift {

bool Interval::contains(double v) const noexcept {
    const bool above = lo_closed ? v >= lo : v > lo;
    const bool below = hi_closed ? v <= hi : v < hi;
    return above && below;
}

std::string format_bound(double v) {
    double rounded = std::round(v * 1e12) / 1e12;
    if (rounded == 0.0) rounded = 0.0;  // drop the sign of -0
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), rounded);
    return std::string(buf.data(), ptr);
}

std::string to_string(const Interval& i) {
    return std::string(i.lo_closed ? "[" : "(") + format_bound(i.lo) + ", " + format_bound(i.hi) +
           (i.hi_closed ? "]" : ")");
}

std::string to_string(const DistinctiveArea& a) {
    return to_string(a.negative) + " ∪ " + to_string(a.positive);
}

DifferenceProfile difference_profile(const AlignedPair& pair) {
    return difference_profile(pair, similarity_index(pair).omega_p);
}

DifferenceProfile difference_profile(const AlignedPair& pair, double omega_p) {
    const double recomputed = similarity_index(pair).omega_p;
    if (!(std::abs(recomputed - omega_p) <= 1e-9)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "omega_p " << omega_p << " does not match the pair (" << recomputed << ")";
        throw UsageError(msg.str());
    }

    DifferenceProfile p;
    p.categories = pair.categories();
    p.omega_p = omega_p;
    p.d.resize(pair.k());
    for (std::size_t i = 0; i < pair.k(); ++i) p.d[i] = pair.y.share(i) - pair.x.share(i);

    const auto [lo, hi] = std::minmax_element(p.d.begin(), p.d.end());
    p.d_min = *lo;
    p.d_max = *hi;
    p.g_p = std::min(std::abs(p.d_min), std::abs(p.d_max));

    const double spread = 1.0 - omega_p;
    p.abs_area = {{-spread, -p.g_p, true, false}, {p.g_p, spread, false, true}};
    p.r = relative_differences(p);
    if (p.r) p.rel_area = DistinctiveArea{{-spread / p.g_p, -1.0, true, false}, {1.0, spread / p.g_p, false, true}};
    return p;
}

std::optional<std::vector<double>> relative_differences(const DifferenceProfile& profile) {
    if (!(profile.g_p > 0.0)) return std::nullopt;
    std::vector<double> r(profile.d.size());
    std::transform(profile.d.begin(), profile.d.end(), r.begin(),
                   [g = profile.g_p](double d) { return d / g; });
    return r;
}

const char* to_string(DepthClass c) noexcept {
    switch (c) {
        case DepthClass::not_distinctive: return "not_distinctive";
        case DepthClass::insignificant: return "insignificant";
        case DepthClass::barely: return "barely";
        case DepthClass::moderately: return "moderately";
        case DepthClass::highly: return "highly";
        case DepthClass::huge: return "huge";
    }
    return "?";
}

DepthClass classify_depth(double r) {
    const double m = std::abs(r);
    if (m <= 1.0) return DepthClass::not_distinctive;
    if (m < 1.10) return DepthClass::insignificant;
    if (m < 1.25) return DepthClass::barely;
    if (m < 1.40) return DepthClass::moderately;
    if (m < 1.60) return DepthClass::highly;
    return DepthClass::huge;
}

const char* to_string(Tail t) noexcept {
    switch (t) {
        case Tail::none: return "none";
        case Tail::negative: return "negative";
        case Tail::positive: return "positive";
    }
    return "?";
}

std::vector<std::size_t> DistinctiveChanges::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (flags[i]) out.push_back(i);
    }
    return out;
}

DistinctiveChanges detect_distinctive(const DifferenceProfile& profile) {
    DistinctiveChanges out;
    out.flags.assign(profile.k(), false);
    out.depth.assign(profile.k(), DepthClass::not_distinctive);

    const double neg = std::abs(profile.d_min);
    const double pos = std::abs(profile.d_max);
    if (std::abs(neg - pos) <= kTieTolerance) return out;

    for (std::size_t i = 0; i < profile.k(); ++i) {
        if (std::abs(profile.d[i]) > profile.g_p + kTieTolerance) {
            out.flags[i] = true;
            out.depth[i] = classify_depth(profile.d[i] / profile.g_p);
        }
    }
    out.tail = neg > pos ? Tail::negative : Tail::positive;
    return out;
}

const char* to_string(Dispersion d) noexcept {
    switch (d) {
        case Dispersion::typical: return "typical";
        case Dispersion::atypical: return "atypical";
        case Dispersion::outlier: return "outlier";
    }
    return "?";
}

ChangeDiagnostics diagnostics(const DifferenceProfile& profile) {
    ChangeDiagnostics out;
    const auto k = static_cast<double>(profile.k());
    double sum = 0.0, sum2 = 0.0;
    for (double d : profile.d) sum += d;
    out.mean = sum / k;

    double sum3 = 0.0;
    for (double d : profile.d) {
        const double c = d - out.mean;
        sum2 += c * c;
        sum3 += c * c * c;
    }
    out.S = std::sqrt(sum2 / k);
    out.M3 = sum3 / k;
    if (out.S > 0.0) out.A = out.M3 / (out.S * out.S * out.S);

    out.dispersion.reserve(profile.k());
    for (double d : profile.d) {
        const double m = std::abs(d - out.mean);
        if (m < out.S - kTieTolerance)
            out.dispersion.push_back(Dispersion::typical);
        else if (m > 3.0 * out.S + kTieTolerance)
            out.dispersion.push_back(Dispersion::outlier);
        else
            out.dispersion.push_back(Dispersion::atypical);
    }
    return out;
}

}  // namespace structshift
