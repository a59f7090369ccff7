#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pdsample/pdhg.hpp"

namespace pdsample {

/// States k = 0..N of a fixed-penalty first-order run.
std::vector<SolverState> record_run(const SaddleForm& sf, const StepSizes& steps, std::int64_t N,
                                    const SolverState& start);

/// Average of the last `average` iterates of a long run from the default start.
std::pair<Vector, Vector> reference_saddle_point(const SaddleForm& sf, double sigma = 0.25,
                                                 std::int64_t iterations = 1'000'000,
                                                 std::int64_t average = 1'000);

struct CertRow {
  std::int64_t N = 0;
  std::int64_t k0 = 0;
  double min_combined_residual = 0.0;  // ||dx||^2/(4 tau1) + ||y_k - y^{k-1}||^2/(2 tau2), minimized over k <= N
  double combined_bound = 0.0;         // Delta0 / N
  double rx = 0.0;                     // ||x_{k0-1} - x_{k0}|| / tau1
  double ry = 0.0;                     // ||y^{k0-1} - y^{k0}|| / tau2
  double epsilon = 0.0;                // eps_{k0}
  double envelope_rx = 0.0;            // 2 sqrt(Delta0) / sqrt(tau1 N)
  double envelope_ry = 0.0;            // sqrt(3 Delta0) / sqrt(tau2 N)
  double epsilon_bound = 0.0;          // Delta0 / (2N)
  bool violated = false;
  // Nonconvex summability inequality, reported without a verdict.
  double sum_lhs = 0.0;
  double sum_rhs = 0.0;
};

struct CertificateReport {
  double delta0 = 0.0;
  std::vector<CertRow> rows;
  std::int64_t violations = 0;
  std::int64_t epsilon_violations = 0;  // k with eps_k > ||dx||^2/(8 tau1)
  std::int64_t aux_dual_violations = 0; // k with ||y^k - y_k||^2/tau2 > ||dx||^2/(4 tau1)
};

inline constexpr double kEnvelopeSlack = 0.05;

/// Checks the convex-case residual envelopes on the recorded states for each N
/// in `grid`. Throws InputError for a nonconvex run (rho != 0 or Q not PSD).
CertificateReport certificate_check(const std::vector<SolverState>& states, const SaddleForm& sf,
                                    const StepSizes& steps, const Vector& x_star, const Vector& y_star,
                                    const std::vector<std::int64_t>& grid);

struct BoundRow {
  Vector p;
  double feasible_freq = 0.0;
  double phi = 0.0;
  double optimal_freq = 0.0;
  double psi = 0.0;
  double margin = 0.0;  // min of the two empirical-minus-bound differences
};

struct BoundReport {
  std::vector<BoundRow> rows;
  double min_margin = 0.0;
  double z_opt = 0.0;
};

/// Monte-Carlo check of the sampling bounds: `trials` batches of k samples per
/// marginal vector. Feasibility counts Ax >= b only; optimality counts
/// f(x) <= f(x*) + delta with x* from enumeration. Requires n <= 12.
BoundReport bound_validation(const BipInstance& inst, const std::vector<Vector>& p_schedule,
                             std::int64_t trials, std::int64_t k, double delta, std::uint64_t seed);

std::string certificate_csv(const CertificateReport& report);
std::string bound_csv(const BoundReport& report);

}  // namespace pdsample
