#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdsample/model.hpp"
#include "pdsample/sampling.hpp"
#include "pdsample/schedule.hpp"

namespace pdsample {

enum class TuMode { kAuto, kOff };

struct SolveConfig {
  double sigma = 0.99;
  std::int64_t k_int = 10;  // sampling interval
  std::int64_t k_r = 1;     // sampling rounds per trigger
  std::int64_t k_b = 128;   // batch size
  PenaltyParams penalty;
  HaltParams halt;
  double time_limit_seconds = 1800.0;
  std::int64_t max_iterations = -1;  // negative: unlimited
  std::uint64_t seed = 0;
  TuMode tu = TuMode::kAuto;
  std::string sampler;  // empty: take the instance's meta.sampler
  Assignment3dParams assign3d;
  bool monotone = false;
  bool diagnostics = false;
  double bound_rel_delta = 0.1;  // delta for the optimality bound, relative to max(|z_best|, 1)
  int threads = 1;
  bool zero_clock = false;  // report wall_seconds = 0 so traces are reproducible byte for byte
};

/// Throws InputError on out-of-range parameters.
void validate(const SolveConfig& cfg);

struct TraceRecord {
  std::int64_t iter = 0;
  double wall_seconds = 0.0;
  double rho = 0.0;
  double sx_norm = 0.0;
  double sy_norm = 0.0;
  double primal_feas_gap = 0.0;
  double binary_gap = 0.0;
  std::optional<double> z_best;
  std::optional<double> psi;
  std::optional<double> phi;
};

nlohmann::json to_json(const TraceRecord& r);

using TraceSink = std::function<void(const TraceRecord&)>;

enum class HaltReason { kConverged, kTimeLimit, kIterationLimit };

struct SolveResult {
  Incumbent incumbent;  // in the original instance's variables and units
  std::vector<TraceRecord> trace;
  std::int64_t iterations = 0;
  std::int64_t sampling_rounds = 0;
  bool reformulated = false;
  bool relaxed = false;
  HaltReason reason = HaltReason::kConverged;
  double seconds = 0.0;
};

std::string to_string(HaltReason reason);

/// Runs the sampling-augmented first-order loop. Each trace record is passed to
/// `sink` as soon as it is produced, so a DivergenceError leaves the partial
/// trace with the caller.
SolveResult solve(const BipInstance& inst, const SolveConfig& cfg, const TraceSink& sink = {});

}  // namespace pdsample
