#include "pdsample/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace pdsample {

double psi_bound(const OptBoundInput& in) {
  if (!(in.delta > 0.0) || !(in.lipschitz > 0.0)) throw InputError("psi_bound: delta and L_f must be positive");
  if (in.mu < 0.0) throw InputError("psi_bound: mu must be nonnegative");
  if (in.mu == 0.0) return 1.0;
  const double t = in.delta / in.lipschitz;
  if (in.mu > t) throw InputError("psi_bound: requires mu <= delta / L_f");
  const double exponent = static_cast<double>(in.k) * (t * (1.0 - std::log(t / in.mu)) - in.mu);
  return std::clamp(1.0 - std::exp(exponent), 0.0, 1.0);
}

double phi_bound(const FeasBoundInput& in) {
  if (!(in.eta > 0.0)) throw InputError("phi_bound: eta must be positive");
  if (in.m < 1) throw InputError("phi_bound: at least one row is required");
  const double ratio = in.gamma_plus / in.eta;
  const double bracket = std::max(ratio * ratio - std::log(static_cast<double>(in.m)) / 2.0, 0.0);
  return std::clamp(1.0 - std::exp(-2.0 * static_cast<double>(in.k) * bracket), 0.0, 1.0);
}

double expected_l1_distance(const Vector& p, const Vector& x_star) {
  if (p.size() != x_star.size()) throw DimensionError("expected_l1_distance: length mismatch");
  double mu = 0.0;
  for (Index i = 0; i < p.size(); ++i) mu += x_star[i] * (1.0 - p[i]) + (1.0 - x_star[i]) * p[i];
  return mu;
}

double objective_lipschitz(const BipInstance& inst) {
  double lf = inst.c.size() ? inst.c.cwiseAbs().maxCoeff() : 0.0;
  if (inst.Q.nonZeros() > 0) {
    double row_max = 0.0;
    for (Index r = 0; r < inst.Q.rows(); ++r) row_max = std::max(row_max, inst.Q.row(r).cwiseAbs().sum());
    lf += 2.0 * row_max;
  }
  return lf;
}

BoundInputs bound_inputs_from_state(const Vector& p, const BipInstance& inst, const Vector* x_star,
                                    double delta, std::int64_t k) {
  if (p.size() != inst.n) throw DimensionError("bound inputs: p length must equal n");
  BoundInputs out;
  out.equality_rows_ignored = inst.B.rows() > 0;
  out.feas.m = inst.A.rows();
  out.feas.k = k;
  if (inst.A.rows() > 0) {
    const Vector slack = spmv(inst.A, p) - inst.b;
    out.feas.gamma_plus = std::max(slack.minCoeff(), 0.0);
    out.feas.eta = row_norms(inst.A).maxCoeff();
  }
  if (x_star != nullptr) {
    OptBoundInput opt;
    opt.mu = expected_l1_distance(p, *x_star);
    opt.delta = delta;
    opt.lipschitz = objective_lipschitz(inst);
    opt.k = k;
    out.opt = opt;
  }
  return out;
}

}  // namespace pdsample
