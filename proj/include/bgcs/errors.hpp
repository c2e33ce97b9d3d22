#pragma once

#include <stdexcept>
#include <string>

namespace bgcs {

// Bad input: out-of-domain parameters, inconsistent family/ladder choices,
// malformed configuration.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// The numerics could not deliver the requested accuracy: series that do not
// converge before the hard cap, truncation guard-band violations, grids that
// clip probability mass.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bgcs
