#pragma once

#include <cstdint>

#include "pdsample/model.hpp"

namespace pdsample {

struct StepSizes {
  double tau1 = 0.0;  // primal
  double tau2 = 0.0;  // dual
  double sigma = 0.0;
};

inline constexpr double kMinSigma = 1e-6;

/// tau1 = tau2 = sqrt(sigma); valid once ||K||_2 = 1.
StepSizes default_steps(double sigma);

struct SolverState {
  Vector x;
  Vector x_prev;
  Vector x_bar;
  Vector y;
  double rho = 0.0;
  std::int64_t k = 0;
};

/// x0 = x_prev = x_bar = 0.5 * 1, y0 = 0.
SolverState initial_state(const SaddleForm& sf, double rho = 0.0);

/// Same as above from an explicit starting pair.
SolverState initial_state(const Vector& x0, const Vector& y0, double rho = 0.0);

/// grad_x L(x, y) = c + rho*1 + K^T y + 2 Q x - 2 rho x.
Vector grad_x(const SaddleForm& sf, const Vector& x, const Vector& y, double rho);

/// grad_y L(x, y) = K x + r.
Vector grad_y(const SaddleForm& sf, const Vector& x);

/// L(x; y) = <x,Qx> + <c,x> + <y,Kx+r> + rho <x, 1-x>.
double lagrangian(const SaddleForm& sf, const Vector& x, const Vector& y, double rho);

/// Projection onto R_+^{m1} x R^{m2}.
void project_dual(Vector& y, Index m1);

inline constexpr std::int64_t kNanCheckInterval = 100;

/// One PDHG update. The iterate is checked for NaN every kNanCheckInterval
/// iterations; a non-finite iterate throws DivergenceError.
void first_order_step(SolverState& state, const SaddleForm& sf, const StepSizes& steps);

struct ResidualReport {
  double sx_norm = 0.0;
  double sy_norm = 0.0;
  double primal_feas_gap = 0.0;
  double binary_gap = 0.0;

  double dual_gap() const { return sx_norm + sy_norm; }
};

/// Near-stationarity residuals for `state`, which must follow `prev` by one step.
ResidualReport residuals(const SolverState& prev, const SolverState& state, const SaddleForm& sf,
                         const StepSizes& steps);

/// ||max(Kx+r, 0)_ineq||_inf + ||(Kx+r)_eq||_inf.
double primal_feasibility_gap(const SaddleForm& sf, const Vector& x);

/// <x, 1-x> / n (0 when n = 0).
double binary_gap(const Vector& x);

// Diagnostics-only quantities.

/// Auxiliary dual y^k = y_k + tau2 K (x_bar_k - x_k).
Vector auxiliary_dual(const SolverState& state, const SaddleForm& sf, const StepSizes& steps);

/// eps_k = L(x_k, y_k) - [L(x_{k-1}, y_k) + <grad_x L(x_{k-1}, y_k), x_k - x_{k-1}>].
double linearization_gap(const SolverState& state, const SaddleForm& sf);

}  // namespace pdsample
