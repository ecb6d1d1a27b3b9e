#pragma once

#include <stdexcept>
#include <string>

namespace masq {

// Invalid or inconsistent user configuration; CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at run time (integrator underflow, invariant breach,
// non-physical parameters); CLI exit code 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace masq
