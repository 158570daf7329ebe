#include "structshift/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "structshift/error.hpp"

namespace structshift {

namespace {

std::vector<double> pairwise_min(const AlignedPair& pair) {
    const auto& x = pair.x.shares();
    const auto& y = pair.y.shares();
    std::vector<double> mins(x.size());
    std::transform(x.begin(), x.end(), y.begin(), mins.begin(),
                   [](double a, double b) { return std::min(a, b); });
    return mins;
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double exponent(TransformOrder order) noexcept {
    switch (order) {
        case TransformOrder::half: return 0.5;
        case TransformOrder::one: return 1.0;
        case TransformOrder::two: return 2.0;
    }
    return 1.0;
}

const char* to_string(TransformOrder order) noexcept {
    switch (order) {
        case TransformOrder::half: return "0.5";
        case TransformOrder::one: return "1";
        case TransformOrder::two: return "2";
    }
    return "?";
}

TransformOrder transform_order_from(double value) {
    if (value == 0.5) return TransformOrder::half;
    if (value == 1.0) return TransformOrder::one;
    if (value == 2.0) return TransformOrder::two;
    throw UsageError("transform order must be one of 0.5, 1, 2 (got " + std::to_string(value) + ")");
}

double bray_curtis(const AlignedPair& pair) {
    const auto mins = pairwise_min(pair);
    return clamp_unit(1.0 - std::accumulate(mins.begin(), mins.end(), 0.0));
}

double transform(double distance, TransformOrder order) {
    if (!(distance >= 0.0 && distance <= 1.0))
        throw UsageError("distance must lie in [0,1] (got " + std::to_string(distance) + ")");
    const double s = 1.0 - distance;
    switch (order) {
        case TransformOrder::half: return std::sqrt(s);
        case TransformOrder::one: return s;
        case TransformOrder::two: return s * s;
    }
    return s;
}

SimilarityResult similarity_index(const AlignedPair& pair, TransformOrder order) {
    SimilarityResult r;
    r.per_category_min = pairwise_min(pair);
    r.omega_p = clamp_unit(std::accumulate(r.per_category_min.begin(), r.per_category_min.end(), 0.0));
    r.bray_curtis = 1.0 - r.omega_p;
    r.transform_order = order;
    r.transformed_similarity = transform(r.bray_curtis, order);
    return r;
}

}  // namespace structshift
