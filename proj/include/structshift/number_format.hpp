#pragma once

#include <string>

namespace structshift {

/// Shortest decimal text that parses back to exactly `v`.
std::string shortest(double v);

/// Rounded half away from zero to `decimals` places, fixed notation, no "-0".
std::string fixed_half_away(double v, int decimals);

}  // namespace structshift
