#pragma once

#include <cstdint>
#include <deque>

#include "pdsample/pdhg.hpp"

namespace pdsample {

struct PenaltyParams {
  double rho_min = 1e-3;
  double rho_max = 10.0;
  double T = 100.0;
  double p = 2.0;
  double delta = 1e-6;
};

/// Polynomial penalty growth rho~_n = rho_min (1 + n/T)^p, clipped to
/// [rho_prev + delta, rho_max].
class PenaltySchedule {
 public:
  explicit PenaltySchedule(PenaltyParams params = {});
  PenaltySchedule(PenaltyParams params, std::int64_t n, double rho_prev);

  /// Emits the next penalty and advances the counter.
  double update();

  const PenaltyParams& params() const { return params_; }
  std::int64_t counter() const { return n_; }
  double rho_prev() const { return rho_prev_; }
  /// rho~_n of the most recent update.
  double last_unclipped() const { return last_unclipped_; }

 private:
  PenaltyParams params_;
  std::int64_t n_ = 0;
  double rho_prev_ = 0.0;
  double last_unclipped_ = 0.0;
};

/// rho_min (1 + n/T)^p.
double penalty_growth(const PenaltyParams& params, std::int64_t n);

struct HaltParams {
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;
  double tol_binary = 1e-6;
  std::int64_t stall_window = 50;
  double stall_rel_change = 1e-8;
};

/// Stopping rule evaluated once per sampling trigger.
class HaltState {
 public:
  explicit HaltState(HaltParams params = {});

  /// True once every indicator is within tolerance or stalled over the window,
  /// and the incumbent has not improved for stall_window checks.
  bool check(const ResidualReport& report, bool incumbent_improved);

  const HaltParams& params() const { return params_; }
  std::int64_t rounds_since_incumbent_improved() const { return since_improved_; }

 private:
  bool settled(const std::deque<double>& history, double tol) const;

  HaltParams params_;
  std::deque<double> primal_;
  std::deque<double> dual_;
  std::deque<double> binary_;
  std::int64_t since_improved_ = 0;
};

}  // namespace pdsample
