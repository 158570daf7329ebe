#pragma once

// Distinctive structural changes between a reference structure x and a
// compared structure y.
//
// d_i = y_i - x_i is the change of category i. The threshold
// g_p = min(|d_min|, |d_max|) is the size of the smaller tail; a category is
// distinctive when its change strictly exceeds it, |d_i| > g_p. Its depth is
// graded on |r_i| = |d_i| / g_p.

#include <optional>
#include <string>
#include <vector>

#include "structshift/structures.hpp"

namespace structshift {

/// Absolute slack used when comparing differences against g_p and S.
inline constexpr double kTieTolerance = 1e-12;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(double v) const noexcept;
};

/// Negative and positive sub-intervals of a distinctive-change area.
struct DistinctiveArea {
    Interval negative;
    Interval positive;

    bool contains(double v) const noexcept { return negative.contains(v) || positive.contains(v); }
};

/// "[-0.1, -0.04) ∪ (0.04, 0.1]". Bounds are rounded to 12 decimals and
/// printed in shortest form.
std::string to_string(const Interval& i);
std::string to_string(const DistinctiveArea& a);
std::string format_bound(double v);

struct DifferenceProfile {
    std::vector<std::string> categories;
    std::vector<double> d;
    double d_min = 0.0;
    double d_max = 0.0;
    double g_p = 0.0;
    double omega_p = 1.0;
    /// [omega_p - 1, -g_p) ∪ (g_p, 1 - omega_p]
    DistinctiveArea abs_area;
    /// d_i / g_p; absent when g_p = 0.
    std::optional<std::vector<double>> r;
    /// [(omega_p - 1)/g_p, -1) ∪ (1, (1 - omega_p)/g_p]; absent when g_p = 0.
    std::optional<DistinctiveArea> rel_area;

    std::size_t k() const noexcept { return d.size(); }
};

/// Throws UsageError if `omega_p` disagrees with the pair by more than 1e-9.
DifferenceProfile difference_profile(const AlignedPair& pair, double omega_p);
DifferenceProfile difference_profile(const AlignedPair& pair);

/// r_i = d_i / g_p, or nullopt ("no change") when g_p = 0.
std::optional<std::vector<double>> relative_differences(const DifferenceProfile& profile);

enum class DepthClass { not_distinctive, insignificant, barely, moderately, highly, huge };

const char* to_string(DepthClass c) noexcept;

/// Bands on |r|: <=1 / (1,1.10) / [1.10,1.25) / [1.25,1.40) / [1.40,1.60) / >=1.60.
DepthClass classify_depth(double r);

/// Which side of zero carries the distinctive changes.
enum class Tail { none, negative, positive };

const char* to_string(Tail t) noexcept;

struct DistinctiveChanges {
    std::vector<bool> flags;
    /// Depth per category; not_distinctive wherever the flag is false.
    std::vector<DepthClass> depth;
    Tail tail = Tail::none;

    std::vector<std::size_t> indices() const;
    bool any() const noexcept { return tail != Tail::none; }
};

DistinctiveChanges detect_distinctive(const DifferenceProfile& profile);

enum class Dispersion { typical, atypical, outlier };

const char* to_string(Dispersion d) noexcept;

struct ChangeDiagnostics {
    double mean = 0.0;
    /// Population standard deviation sqrt(sum d_i^2 / k).
    double S = 0.0;
    /// Third central moment sum d_i^3 / k.
    double M3 = 0.0;
    /// M3 / S^3; absent when S = 0.
    std::optional<double> A;
    /// typical: |d| < S, outlier: |d| > 3S, atypical otherwise.
    std::vector<Dispersion> dispersion;
};

ChangeDiagnostics diagnostics(const DifferenceProfile& profile);

}  // namespace structshift
