#pragma once

#include <cstdint>
#include <optional>

#include "pdsample/model.hpp"

namespace pdsample {

struct OptBoundInput {
  double mu = 0.0;     // E ||x - x*||_1 under the product distribution
  double delta = 0.0;  // optimality tolerance
  double lipschitz = 0.0;  // 1-norm Lipschitz constant of the objective
  std::int64_t k = 1;
};

struct FeasBoundInput {
  double gamma_plus = 0.0;  // max(min_j <A_j,p> - b_j, 0)
  double eta = 0.0;         // max row 2-norm of A
  std::int64_t m = 0;
  std::int64_t k = 1;
};

/// Lower bound on P(some of k samples is delta-optimal):
/// 1 - exp(k (t (1 - log(t/mu)) - mu)), t = delta / L_f. Requires mu <= t.
double psi_bound(const OptBoundInput& in);

/// Lower bound on P(some of k samples satisfies Ax >= b):
/// 1 - exp(-2k [gamma_+^2/eta^2 - log(m)/2]_+).
double phi_bound(const FeasBoundInput& in);

struct BoundInputs {
  std::optional<OptBoundInput> opt;  // present when x_star was given
  FeasBoundInput feas;
  bool equality_rows_ignored = false;
};

/// Closed-form inputs at marginals p. L_f is ||c||_inf for linear objectives
/// and ||c||_inf + 2 max_i sum_j |Q_ij| otherwise.
BoundInputs bound_inputs_from_state(const Vector& p, const BipInstance& inst, const Vector* x_star,
                                    double delta, std::int64_t k);

double expected_l1_distance(const Vector& p, const Vector& x_star);
double objective_lipschitz(const BipInstance& inst);

}  // namespace pdsample
