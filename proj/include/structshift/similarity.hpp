#pragma once

#include <vector>

#include "structshift/structures.hpp"

namespace structshift {

/// Exponent of the similarity transform f(d) = (1 - d)^order.
enum class TransformOrder { half, one, two };

double exponent(TransformOrder order) noexcept;
const char* to_string(TransformOrder order) noexcept;
/// Accepts 0.5, 1 and 2; anything else throws UsageError.
TransformOrder transform_order_from(double exponent);

struct SimilarityResult {
    double omega_p = 0.0;
    double bray_curtis = 0.0;
    TransformOrder transform_order = TransformOrder::one;
    double transformed_similarity = 0.0;
    std::vector<double> per_category_min;
};

/// 1 - sum_i min(x_i, y_i).
double bray_curtis(const AlignedPair& pair);

/// (1 - distance)^order for distance in [0,1].
double transform(double distance, TransformOrder order);

/// omega_p = sum_i min(x_i, y_i), together with the distance it complements.
SimilarityResult similarity_index(const AlignedPair& pair,
                                  TransformOrder order = TransformOrder::one);

}  // namespace structshift
