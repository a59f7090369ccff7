#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdsample/linalg.hpp"

namespace pdsample {

/// Tags carried alongside an instance: where it came from and which optional
/// solver features it supports.
struct InstanceMeta {
  std::string problem_class;           // "setcover", "knapsack", ...
  std::uint64_t seed = 0;
  std::vector<Index> tu_rows;          // rows of B forming a TU block
  std::vector<Index> tu_cols;          // columns I with B_{JI} invertible
  std::string sampler;                 // "" or "default" or "assignment3d"
  std::optional<std::int64_t> nnz;     // nnz(Q) + nnz(K), written by generators

  bool has_tu_block() const { return !tu_rows.empty() && tu_rows.size() == tu_cols.size(); }
  friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

/// minimize <x,Qx> + <c,x> + c0  s.t.  A x >= b,  B x = d,  x in {0,1}^n.
struct BipInstance {
  Index n = 0;
  SparseMatrix Q;
  Vector c;
  double c0 = 0.0;
  SparseMatrix A;
  Vector b;
  SparseMatrix B;
  Vector d;
  InstanceMeta meta;

  Index num_inequalities() const { return A.rows(); }
  Index num_equalities() const { return B.rows(); }
  std::int64_t nnz() const { return Q.nonZeros() + A.nonZeros() + B.nonZeros(); }
};

/// Instance with all matrices sized for n variables and no constraints.
BipInstance empty_instance(Index n);

/// Throws DimensionError / InputError when shapes, symmetry of Q, or
/// finiteness do not hold.
void validate(const BipInstance& inst);

bool constraints_integral(const BipInstance& inst);
bool objective_integral(const BipInstance& inst);

struct ScalingRecord {
  Vector row_scales;     // divisor applied to each row of K in step 1
  double obj_scale = 1;  // ||Q||_2 + ||c||_2 before scaling (1 when that is 0)
  double k_scale = 1;    // spectral norm of K after row normalization (1 when 0)
};

/// Solver-facing data: min_x max_y <x,Qx> + <c,x> + <y, Kx + r> over the box,
/// with y[0, m1) >= 0 and y[m1, m1+m2) free.
struct SaddleForm {
  SparseMatrix Q;
  Vector c;
  SparseMatrix K;
  Vector r;
  Index m1 = 0;
  Index m2 = 0;
  ScalingRecord scaling;

  Index n() const { return c.size(); }
  Index m() const { return m1 + m2; }
};

/// K = -[A; B], r = (b; d); no normalization.
SaddleForm build_saddle_form(const BipInstance& inst);

/// Row-normalizes K, scales the objective by ||Q||_2 + ||c||_2, then divides K
/// and r by the spectral norm of K.
SaddleForm preprocess(SaddleForm sf);

/// <x,Qx> + <c,x> + c0 in original units. Throws InputError for non-binary x.
double eval_objective(const BipInstance& inst, const Vector& x);

struct Violation {
  double ineq = 0.0;  // || max(b - Ax, 0) ||_inf
  double eq = 0.0;    // || Bx - d ||_inf
};

Violation feasibility_violation(const BipInstance& inst, const Vector& x);

inline constexpr double kFeasTol = 1e-9;

/// Feasibility of a binary point. Integral constraint data is checked with
/// zero tolerance (binary sums of integers are exact in double).
bool is_feasible(const BipInstance& inst, const Vector& x);

}  // namespace pdsample
