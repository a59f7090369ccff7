#include "pdsample/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace pdsample {

namespace {

void check_params(const PenaltyParams& p) {
  if (!(p.rho_min > 0.0)) throw InputError("rho_min must be positive");
  if (!(p.rho_max >= p.rho_min)) throw InputError("rho_max must be at least rho_min");
  if (!(p.T > 0.0)) throw InputError("growth T must be positive");
  if (!(p.p > 0.0)) throw InputError("growth p must be positive");
  if (!(p.delta >= 0.0)) throw InputError("rho delta must be nonnegative");
}

}  // namespace

double penalty_growth(const PenaltyParams& params, std::int64_t n) {
  return params.rho_min * std::pow(1.0 + static_cast<double>(n) / params.T, params.p);
}

PenaltySchedule::PenaltySchedule(PenaltyParams params)
    : PenaltySchedule(params, 0, params.rho_min - params.delta) {}

PenaltySchedule::PenaltySchedule(PenaltyParams params, std::int64_t n, double rho_prev)
    : params_(params), n_(n), rho_prev_(rho_prev) {
  check_params(params_);
}

double PenaltySchedule::update() {
  last_unclipped_ = penalty_growth(params_, n_);
  const double rho = std::min(std::max(last_unclipped_, rho_prev_ + params_.delta), params_.rho_max);
  ++n_;
  rho_prev_ = rho;
  return rho;
}

HaltState::HaltState(HaltParams params) : params_(params) {
  if (params_.stall_window < 1) throw InputError("stall window must be at least 1");
}

bool HaltState::settled(const std::deque<double>& history, double tol) const {
  if (history.back() <= tol) return true;
  if (static_cast<std::int64_t>(history.size()) < params_.stall_window) return false;
  const auto [lo, hi] = std::minmax_element(history.begin(), history.end());
  const double spread = *hi - *lo;
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  return spread == 0.0 || spread < params_.stall_rel_change * scale;
}

bool HaltState::check(const ResidualReport& report, bool incumbent_improved) {
  const auto push = [this](std::deque<double>& h, double v) {
    h.push_back(v);
    while (static_cast<std::int64_t>(h.size()) > params_.stall_window) h.pop_front();
  };
  push(primal_, report.primal_feas_gap);
  push(dual_, report.dual_gap());
  push(binary_, report.binary_gap);
  since_improved_ = incumbent_improved ? 0 : since_improved_ + 1;

  return settled(primal_, params_.tol_primal) && settled(dual_, params_.tol_dual) &&
         settled(binary_, params_.tol_binary) && since_improved_ >= params_.stall_window;
}

}  // namespace pdsample
