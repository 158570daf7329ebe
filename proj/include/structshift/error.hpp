#pragma once

#include <stdexcept>
#include <string>

namespace structshift {

/// Invalid input data: malformed tables, bad shares, unknown populations.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller asked for something the library cannot provide
/// (out-of-range parameters, missing tabulated critical values).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace structshift
