#include "pdsample/model.hpp"

#include <cmath>

namespace pdsample {

BipInstance empty_instance(Index n) {
  BipInstance inst;
  inst.n = n;
  inst.Q = SparseMatrix(n, n);
  inst.c = Vector::Zero(n);
  inst.A = SparseMatrix(0, n);
  inst.b = Vector(0);
  inst.B = SparseMatrix(0, n);
  inst.d = Vector(0);
  inst.Q.makeCompressed();
  inst.A.makeCompressed();
  inst.B.makeCompressed();
  return inst;
}

void validate(const BipInstance& inst) {
  if (inst.n < 0) throw DimensionError("instance: negative variable count");
  if (inst.c.size() != inst.n) throw DimensionError("instance: c length must equal n");
  if (inst.Q.rows() != inst.n || inst.Q.cols() != inst.n) throw DimensionError("instance: Q must be n x n");
  if (inst.A.cols() != inst.n) throw DimensionError("instance: A must have n columns");
  if (inst.B.cols() != inst.n) throw DimensionError("instance: B must have n columns");
  if (inst.b.size() != inst.A.rows()) throw DimensionError("instance: b length must equal rows of A");
  if (inst.d.size() != inst.B.rows()) throw DimensionError("instance: d length must equal rows of B");
  if (!inst.c.allFinite() || !inst.b.allFinite() || !inst.d.allFinite() || !std::isfinite(inst.c0))
    throw InputError("instance: non-finite vector entry");
  const SparseMatrix qt = inst.Q.transpose();
  if (SparseMatrix(qt - inst.Q).norm() != 0.0)
    throw InputError("instance: Q must be symmetric");
  for (Index i = 0; i < static_cast<Index>(inst.meta.tu_rows.size()); ++i)
    if (inst.meta.tu_rows[i] < 0 || inst.meta.tu_rows[i] >= inst.B.rows())
      throw InputError("instance: tu_rows entry out of range");
  for (Index i = 0; i < static_cast<Index>(inst.meta.tu_cols.size()); ++i)
    if (inst.meta.tu_cols[i] < 0 || inst.meta.tu_cols[i] >= inst.n)
      throw InputError("instance: tu_cols entry out of range");
}

bool constraints_integral(const BipInstance& inst) {
  return is_integral(inst.A) && is_integral(inst.B) && is_integral(inst.b) && is_integral(inst.d);
}

bool objective_integral(const BipInstance& inst) {
  return is_integral(inst.Q) && is_integral(inst.c) && std::nearbyint(inst.c0) == inst.c0;
}

SaddleForm build_saddle_form(const BipInstance& inst) {
  validate(inst);
  SaddleForm sf;
  sf.Q = inst.Q;
  sf.c = inst.c;
  sf.K = -vstack(inst.A, inst.B);
  sf.K.makeCompressed();
  sf.r.resize(inst.b.size() + inst.d.size());
  sf.r << inst.b, inst.d;
  sf.m1 = inst.A.rows();
  sf.m2 = inst.B.rows();
  sf.scaling.row_scales = Vector::Ones(sf.m());
  return sf;
}

SaddleForm preprocess(SaddleForm sf) {
  // Step 1: unit rows.
  Vector scales = row_norms(sf.K);
  for (Index i = 0; i < scales.size(); ++i)
    if (scales[i] == 0.0) scales[i] = 1.0;
  for (Index row = 0; row < sf.K.outerSize(); ++row)
    for (SparseMatrix::InnerIterator it(sf.K, row); it; ++it) it.valueRef() /= scales[row];
  sf.r = sf.r.cwiseQuotient(scales);
  sf.scaling.row_scales = scales;

  // Step 2: objective scale.
  const double qn = spectral_norm(sf.Q);
  const double cn = sf.c.stableNorm();
  const double big = std::max(qn, cn);
  const double obj = big > 0.0 ? big * (qn / big + cn / big) : 0.0;
  sf.scaling.obj_scale = obj > 0.0 ? obj : 1.0;
  if (obj > 0.0) {
    sf.Q /= obj;
    sf.c /= obj;
  }

  // Step 3: unit spectral norm of K.
  const double kn = spectral_norm(sf.K);
  sf.scaling.k_scale = kn > 0.0 ? kn : 1.0;
  if (kn > 0.0) {
    sf.K /= kn;
    sf.r /= kn;
  }
  return sf;
}

namespace {

void require_binary(const Vector& x) {
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] != 0.0 && x[i] != 1.0) throw InputError("expected a binary vector");
}

}  // namespace

double eval_objective(const BipInstance& inst, const Vector& x) {
  if (x.size() != inst.n) throw DimensionError("eval_objective: x length must equal n");
  require_binary(x);
  return x.dot(spmv(inst.Q, x)) + inst.c.dot(x) + inst.c0;
}

Violation feasibility_violation(const BipInstance& inst, const Vector& x) {
  if (x.size() != inst.n) throw DimensionError("feasibility_violation: x length must equal n");
  Violation v;
  if (inst.A.rows() > 0) v.ineq = (inst.b - spmv(inst.A, x)).cwiseMax(0.0).maxCoeff();
  if (inst.B.rows() > 0) v.eq = (spmv(inst.B, x) - inst.d).cwiseAbs().maxCoeff();
  return v;
}

bool is_feasible(const BipInstance& inst, const Vector& x) {
  const double tol = constraints_integral(inst) ? 0.0 : kFeasTol;
  const Violation v = feasibility_violation(inst, x);
  return v.ineq <= tol && v.eq <= tol;
}

}  // namespace pdsample
