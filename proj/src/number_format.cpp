#include "structshift/number_format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace structshift {

std::string shortest(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string fixed_half_away(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    // Decimal ties stored just below the tie (0.145 -> 14.4999...) round away.
    const double scaled = v * scale;
    double rounded = std::round(scaled + std::copysign(1e-9, scaled)) / scale;
    if (rounded == 0.0) rounded = 0.0;
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", decimals, rounded);
    return buf.data();
}

}  // namespace structshift
