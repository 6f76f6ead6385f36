#pragma once

#include <stdexcept>

namespace nqg {

// Caller broke a contract: wrong arity, bad symbol range, malformed input.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Work refused because it would exceed a configured cap (cells, search size).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nqg
