#pragma once

#include <vector>

#include "pdsample/model.hpp"

namespace pdsample {

/// Exact elimination of the equality rows J of B through the basis columns I:
/// x_I = s + S x_Ibar with s = B_JI^{-1} d_J and S = -B_JI^{-1} B_JIbar.
struct TuReform {
  std::vector<Index> J;
  std::vector<Index> Jbar;
  std::vector<Index> I;
  std::vector<Index> Ibar;
  LuFactors lu;            // of B_JI
  Vector s;
  SparseMatrix S;          // |I| x |Ibar|, integral because B_JI is unimodular
  BipInstance reduced;     // over x_Ibar, includes the box rows for x_I
  Index n_original = 0;
  double seconds = 0.0;    // wall time spent building the reformulation

  /// s + S x_bar without rounding; works for fractional points.
  Vector basic_values(const Vector& x_bar) const;
};

/// S columns are applied through LU solves and stored sparse; the dense form
/// is never built.
TuReform tu_reformulate(const BipInstance& inst, std::vector<Index> J, std::vector<Index> I);

inline constexpr double kLiftTol = 1e-6;

/// Full-length point with x_Ibar = x_bar and x_I = s + S x_bar. Throws
/// InputError if any x_I is farther than kLiftTol from {0, 1}.
Vector lift(const TuReform& reform, const Vector& x_bar);

/// Like lift() but rounds x_I to the nearest value in {0, 1} without checking.
/// Used on sampled points, whose feasibility is decided on the original instance.
Vector lift_rounded(const TuReform& reform, const Vector& x_bar);

/// Fractional lift with x_I clamped to [0, 1].
Vector lift_fractional(const TuReform& reform, const Vector& x_bar);

/// True iff every square submatrix has determinant in {-1, 0, 1}. Requires
/// min(rows, cols) <= 12 and integral entries.
bool verify_tu_small(const Eigen::MatrixXd& m);

}  // namespace pdsample
