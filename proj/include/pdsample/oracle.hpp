#pragma once

#include <cstdint>
#include <optional>

#include "pdsample/model.hpp"

namespace pdsample {

struct OracleResult {
  bool feasible = false;
  double z_opt = 0.0;
  Vector x_opt;
  std::uint64_t feasible_count = 0;
  std::uint64_t enumerated = 0;
};

inline constexpr Index kOracleMaxVars = 24;

/// Enumerates {0,1}^n in Gray-code order. Ties are broken toward the smallest
/// sum_i x_i 2^i. Integral data is handled in exact 64-bit integer arithmetic.
OracleResult brute_force(const BipInstance& inst);

}  // namespace pdsample
