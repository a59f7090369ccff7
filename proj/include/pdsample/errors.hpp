#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pdsample {

/// Operand shapes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A pivot vanished to working precision during LU factorization.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent problem data (files, metadata, parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A first-order iterate became non-finite.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::int64_t iteration, const std::string& what)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}

  std::int64_t iteration() const noexcept { return iteration_; }

 private:
  std::int64_t iteration_;
};

}  // namespace pdsample
