#include "pdsample/pdhg.hpp"

#include <cmath>

namespace pdsample {

StepSizes default_steps(double sigma) {
  if (!(sigma >= kMinSigma && sigma < 1.0)) throw InputError("sigma must lie in [1e-6, 1)");
  const double tau = std::sqrt(sigma);
  return {tau, tau, sigma};
}

SolverState initial_state(const SaddleForm& sf, double rho) {
  return initial_state(Vector::Constant(sf.n(), 0.5), Vector::Zero(sf.m()), rho);
}

SolverState initial_state(const Vector& x0, const Vector& y0, double rho) {
  SolverState s;
  s.x = x0;
  s.x_prev = x0;
  s.x_bar = x0;
  s.y = y0;
  s.rho = rho;
  s.k = 0;
  return s;
}

Vector grad_x(const SaddleForm& sf, const Vector& x, const Vector& y, double rho) {
  Vector g = sf.c.array() + rho;
  g += spmv_transpose(sf.K, y);
  g += 2.0 * spmv(sf.Q, x);
  g -= 2.0 * rho * x;
  return g;
}

Vector grad_y(const SaddleForm& sf, const Vector& x) { return spmv(sf.K, x) + sf.r; }

double lagrangian(const SaddleForm& sf, const Vector& x, const Vector& y, double rho) {
  return x.dot(spmv(sf.Q, x)) + sf.c.dot(x) + y.dot(grad_y(sf, x)) +
         rho * x.dot((1.0 - x.array()).matrix());
}

void project_dual(Vector& y, Index m1) {
  for (Index i = 0; i < m1; ++i) y[i] = std::max(y[i], 0.0);
}

void first_order_step(SolverState& state, const SaddleForm& sf, const StepSizes& steps) {
  state.y += steps.tau2 * grad_y(sf, state.x_bar);
  project_dual(state.y, sf.m1);

  const Vector delta = grad_x(sf, state.x, state.y, state.rho);
  Vector next = (state.x - steps.tau1 * delta).cwiseMax(0.0).cwiseMin(1.0);

  state.x_bar = 2.0 * next - state.x;
  state.x_prev = std::move(state.x);
  state.x = std::move(next);
  ++state.k;

  if (state.k % kNanCheckInterval == 0 && (!state.x.allFinite() || !state.y.allFinite()))
    throw DivergenceError(state.k, "first-order iterate is not finite");
}

double primal_feasibility_gap(const SaddleForm& sf, const Vector& x) {
  const Vector kx = grad_y(sf, x);
  double ineq = 0.0;
  double eq = 0.0;
  for (Index i = 0; i < sf.m1; ++i) ineq = std::max(ineq, kx[i]);
  for (Index i = sf.m1; i < sf.m(); ++i) eq = std::max(eq, std::abs(kx[i]));
  return ineq + eq;
}

double binary_gap(const Vector& x) {
  if (x.size() == 0) return 0.0;
  return x.dot((1.0 - x.array()).matrix()) / static_cast<double>(x.size());
}

ResidualReport residuals(const SolverState& prev, const SolverState& state, const SaddleForm& sf,
                         const StepSizes& steps) {
  ResidualReport rep;
  const Vector dx = state.x - prev.x;
  // grad_x L(x_k, y_k) - grad_x L(x_{k-1}, y_k) only involves the quadratic terms.
  const Vector sx = -dx / steps.tau1 + 2.0 * spmv(sf.Q, dx) - 2.0 * state.rho * dx;
  const Vector sy = (prev.y - state.y) / steps.tau2 - spmv(sf.K, Vector(state.x - prev.x_bar));
  rep.sx_norm = sx.norm();
  rep.sy_norm = sy.norm();
  rep.primal_feas_gap = primal_feasibility_gap(sf, state.x);
  rep.binary_gap = std::max(binary_gap(state.x), 0.0);
  return rep;
}

Vector auxiliary_dual(const SolverState& state, const SaddleForm& sf, const StepSizes& steps) {
  return state.y + steps.tau2 * spmv(sf.K, Vector(state.x_bar - state.x));
}

double linearization_gap(const SolverState& state, const SaddleForm& sf) {
  const double at_prev = lagrangian(sf, state.x_prev, state.y, state.rho);
  const Vector g = grad_x(sf, state.x_prev, state.y, state.rho);
  return lagrangian(sf, state.x, state.y, state.rho) - at_prev - g.dot(state.x - state.x_prev);
}

}  // namespace pdsample
