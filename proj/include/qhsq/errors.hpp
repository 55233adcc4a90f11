// errors.hpp
// Error taxonomy shared across the library. The CLI maps ConfigError to
// exit code 1 and ResourceLimitError to exit code 2.

#pragma once

#include <stdexcept>
#include <string>

namespace qhsq {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qhsq
