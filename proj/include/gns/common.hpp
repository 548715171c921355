#pragma once

#include <stdexcept>
#include <string>

namespace gns {

// Thrown when a computation would exceed a configured resource cap
// (grid too large, enumeration too long, ...).  CLI maps this to exit code 2.
struct resource_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by root finders when the requested tolerance cannot be met in
// double precision.
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gns
