#include "pdsample/diagnostics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pdsample/bounds.hpp"
#include "pdsample/oracle.hpp"
#include "pdsample/rng.hpp"

namespace pdsample {

std::vector<SolverState> record_run(const SaddleForm& sf, const StepSizes& steps, std::int64_t N,
                                    const SolverState& start) {
  std::vector<SolverState> states;
  states.reserve(static_cast<std::size_t>(N) + 1);
  states.push_back(start);
  SolverState s = start;
  for (std::int64_t k = 0; k < N; ++k) {
    first_order_step(s, sf, steps);
    states.push_back(s);
  }
  return states;
}

std::pair<Vector, Vector> reference_saddle_point(const SaddleForm& sf, double sigma, std::int64_t iterations,
                                                 std::int64_t average) {
  if (average < 1 || average > iterations) throw InputError("reference_saddle_point: bad averaging window");
  const StepSizes steps = default_steps(sigma);
  SolverState s = initial_state(sf, 0.0);
  Vector xs = Vector::Zero(sf.n());
  Vector ys = Vector::Zero(sf.m());
  for (std::int64_t k = 1; k <= iterations; ++k) {
    first_order_step(s, sf, steps);
    if (k > iterations - average) {
      xs += s.x;
      ys += s.y;
    }
  }
  const auto w = static_cast<double>(average);
  return {xs / w, ys / w};
}

namespace {

bool psd(const SparseMatrix& q) {
  if (q.nonZeros() == 0) return true;
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(DenseMatrix(q), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-10 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
}

}  // namespace

CertificateReport certificate_check(const std::vector<SolverState>& states, const SaddleForm& sf,
                                    const StepSizes& steps, const Vector& x_star, const Vector& y_star,
                                    const std::vector<std::int64_t>& grid) {
  if (states.size() < 2) throw InputError("certificate_check: at least one step is required");
  if (x_star.size() != sf.n() || y_star.size() != sf.m())
    throw InputError("certificate_check: a reference saddle point of matching size is required");
  for (const auto& s : states)
    if (s.rho != 0.0) throw InputError("certificate_check: run is nonconvex (rho != 0)");
  if (!psd(sf.Q)) throw InputError("certificate_check: run is nonconvex (Q is not PSD)");

  const double t1 = steps.tau1;
  const double t2 = steps.tau2;
  const SolverState& s0 = states.front();
  CertificateReport rep;
  rep.delta0 = (x_star - s0.x).squaredNorm() / (2 * t1) + (y_star - s0.y).squaredNorm() / (2 * t2);

  const auto last = static_cast<std::int64_t>(states.size()) - 1;
  // Per-step quantities for k = 1..last.
  std::vector<double> combined(last + 1), rx(last + 1), ry(last + 1), eps(last + 1);
  std::vector<double> dx2(last + 1), dy2(last + 1), xprev2(last + 1);
  Vector aux_prev = s0.y;  // y^0 = y_0
  for (std::int64_t k = 1; k <= last; ++k) {
    const SolverState& s = states[k];
    const Vector aux = auxiliary_dual(s, sf, steps);
    const double d = (s.x - states[k - 1].x).squaredNorm();
    dx2[k] = d;
    dy2[k] = (s.y - states[k - 1].y).squaredNorm();
    xprev2[k] = states[k - 1].x.squaredNorm();
    combined[k] = d / (4 * t1) + (s.y - aux_prev).squaredNorm() / (2 * t2);
    rx[k] = std::sqrt(d) / t1;
    ry[k] = (aux_prev - aux).norm() / t2;
    eps[k] = linearization_gap(s, sf);
    const double tiny = 1e-12 * std::max(1.0, d);
    if (eps[k] > d / (8 * t1) + tiny) ++rep.epsilon_violations;
    if ((aux - s.y).squaredNorm() / t2 > d / (4 * t1) + tiny) ++rep.aux_dual_violations;
    aux_prev = aux;
  }

  const double phi0 = lagrangian(sf, s0.x, s0.y, 0.0);
  const double r2 = sf.r.squaredNorm();
  for (const std::int64_t N : grid) {
    if (N < 1 || N > last) throw InputError("certificate_check: grid entry outside the recorded run");
    CertRow row;
    row.N = N;
    row.k0 = 1;
    for (std::int64_t k = 2; k <= N; ++k)
      if (combined[k] < combined[row.k0]) row.k0 = k;
    const auto n = static_cast<double>(N);
    row.min_combined_residual = combined[row.k0];
    row.combined_bound = rep.delta0 / n;
    row.rx = rx[row.k0];
    row.ry = ry[row.k0];
    row.epsilon = eps[row.k0];
    row.envelope_rx = 2 * std::sqrt(rep.delta0) / std::sqrt(t1 * n);
    row.envelope_ry = std::sqrt(3 * rep.delta0) / std::sqrt(t2 * n);
    row.epsilon_bound = rep.delta0 / (2 * n);
    const double slack = 1 + kEnvelopeSlack;
    const double tiny = 1e-12;
    row.violated = row.min_combined_residual > slack * row.combined_bound + tiny ||
                   row.rx > slack * row.envelope_rx + tiny || row.ry > slack * row.envelope_ry + tiny ||
                   row.epsilon > slack * row.epsilon_bound + tiny;
    if (row.violated) ++rep.violations;

    double sx = 0, sy = 0, sp = 0;
    for (std::int64_t k = 1; k <= N; ++k) {
      sx += dx2[k];
      sy += dy2[k];
      sp += xprev2[k];
    }
    const double phiN = lagrangian(sf, states[N].x, states[N].y, 0.0);
    row.sum_lhs = sx / t1 + sy / t2;
    row.sum_rhs = 4 * (phi0 - phiN) + 8 / t1 * sp + 16 * t2 * r2 * n;
    rep.rows.push_back(row);
  }
  return rep;
}

BoundReport bound_validation(const BipInstance& inst, const std::vector<Vector>& p_schedule, std::int64_t trials,
                             std::int64_t k, double delta, std::uint64_t seed) {
  if (inst.n > 12) throw InputError("bound_validation: n must be at most 12");
  if (trials < 1 || k < 1) throw InputError("bound_validation: trials and k must be positive");
  if (!(delta > 0.0)) throw InputError("bound_validation: delta must be positive");

  // Optimum over the inequality system only, matching what the bounds cover.
  BipInstance ineq = inst;
  ineq.B = SparseMatrix(0, inst.n);
  ineq.d = Vector(0);
  const OracleResult opt = brute_force(ineq);
  if (!opt.feasible) throw InputError("bound_validation: instance has no point with Ax >= b");

  // Objective and feasibility of every binary point, indexed by code.
  const std::uint64_t count = std::uint64_t{1} << inst.n;
  std::vector<char> feasible(count), optimal(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    Vector x(inst.n);
    for (Index i = 0; i < inst.n; ++i) x[i] = static_cast<double>((code >> i) & 1u);
    const Violation v = feasibility_violation(inst, x);
    feasible[code] = v.ineq <= (constraints_integral(inst) ? 0.0 : kFeasTol);
    optimal[code] = eval_objective(inst, x) <= opt.z_opt + delta;
  }

  BoundReport rep;
  rep.z_opt = opt.z_opt;
  rep.min_margin = std::numeric_limits<double>::infinity();
  std::uint64_t lane = 0;
  for (const Vector& p : p_schedule) {
    if (p.size() != inst.n) throw DimensionError("bound_validation: p length must equal n");
    BoundRow row;
    row.p = p;
    std::int64_t hit_feas = 0, hit_opt = 0;
    for (std::int64_t t = 0; t < trials; ++t, ++lane) {
      RngStream rng{seed, lane, 0};
      bool f = false, o = false;
      for (std::int64_t s = 0; s < k && !(f && o); ++s) {
        std::uint64_t code = 0;
        for (Index i = 0; i < inst.n; ++i)
          if (rng.next_double() < p[i]) code |= std::uint64_t{1} << i;
        f = f || feasible[code];
        o = o || optimal[code];
      }
      hit_feas += f;
      hit_opt += o;
    }
    row.feasible_freq = static_cast<double>(hit_feas) / static_cast<double>(trials);
    row.optimal_freq = static_cast<double>(hit_opt) / static_cast<double>(trials);

    const BoundInputs bi = bound_inputs_from_state(p, ineq, &opt.x_opt, delta, k);
    row.phi = bi.feas.m > 0 && bi.feas.eta > 0.0 ? phi_bound(bi.feas) : 1.0;
    const OptBoundInput& o = *bi.opt;
    if (o.lipschitz == 0.0) row.psi = 1.0;
    else row.psi = o.mu <= o.delta / o.lipschitz ? psi_bound(o) : 0.0;
    row.margin = std::min(row.feasible_freq - row.phi, row.optimal_freq - row.psi);
    rep.min_margin = std::min(rep.min_margin, row.margin);
    rep.rows.push_back(std::move(row));
  }
  if (rep.rows.empty()) rep.min_margin = 0.0;
  return rep;
}

std::string certificate_csv(const CertificateReport& report) {
  std::ostringstream s;
  s.precision(10);
  s << "N,k0,min_combined_residual,combined_bound,rx,envelope_rx,ry,envelope_ry,epsilon,epsilon_bound,violated,"
       "sum_lhs,sum_rhs\n";
  for (const auto& r : report.rows)
    s << r.N << ',' << r.k0 << ',' << r.min_combined_residual << ',' << r.combined_bound << ',' << r.rx << ','
      << r.envelope_rx << ',' << r.ry << ',' << r.envelope_ry << ',' << r.epsilon << ',' << r.epsilon_bound << ','
      << (r.violated ? 1 : 0) << ',' << r.sum_lhs << ',' << r.sum_rhs << '\n';
  return s.str();
}

std::string bound_csv(const BoundReport& report) {
  std::ostringstream s;
  s.precision(10);
  s << "row,feasible_freq,phi,optimal_freq,psi,margin\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    s << i << ',' << r.feasible_freq << ',' << r.phi << ',' << r.optimal_freq << ',' << r.psi << ',' << r.margin
      << '\n';
  }
  return s.str();
}

}  // namespace pdsample
