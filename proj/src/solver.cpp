#include "pdsample/solver.hpp"

#include <chrono>
#include <cmath>

#include "pdsample/bounds.hpp"
#include "pdsample/pdhg.hpp"
#include "pdsample/tu.hpp"

namespace pdsample {

void validate(const SolveConfig& cfg) {
  if (!(cfg.sigma >= kMinSigma && cfg.sigma < 1.0)) throw InputError("sigma must lie in [1e-6, 1)");
  if (cfg.k_int < 1 || cfg.k_r < 1 || cfg.k_b < 1) throw InputError("k_int, k_r and batch size must be at least 1");
  if (cfg.k_b > (std::int64_t{1} << 32)) throw InputError("batch size is too large");
  if (!(cfg.time_limit_seconds > 0.0)) throw InputError("time limit must be positive");
  if (cfg.threads < 1) throw InputError("threads must be at least 1");
  const auto& pp = cfg.penalty;
  if (!(pp.rho_min >= 0.0 && pp.rho_min <= pp.rho_max) || !(pp.T > 0.0) || !(pp.delta >= 0.0))
    throw InputError("invalid penalty parameters");
}

nlohmann::json to_json(const TraceRecord& r) {
  nlohmann::json j;
  j["iter"] = r.iter;
  j["wall_seconds"] = r.wall_seconds;
  j["rho"] = r.rho;
  j["sx_norm"] = r.sx_norm;
  j["sy_norm"] = r.sy_norm;
  j["primal_feas_gap"] = r.primal_feas_gap;
  j["binary_gap"] = r.binary_gap;
  j["z_best"] = r.z_best ? nlohmann::json(*r.z_best) : nlohmann::json(nullptr);
  if (r.psi) j["psi"] = *r.psi;
  if (r.phi) j["phi"] = *r.phi;
  return j;
}

std::string to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::kConverged: return "converged";
    case HaltReason::kTimeLimit: return "time_limit";
    case HaltReason::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

class Clock {
 public:
  explicit Clock(bool zero) : zero_(zero), start_(std::chrono::steady_clock::now()) {}
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  double reported() const { return zero_ ? 0.0 : elapsed(); }

 private:
  bool zero_;
  std::chrono::steady_clock::time_point start_;
};

// Maps batches and points between the solver's variables and the original ones.
struct Pipeline {
  const BipInstance& original;
  std::optional<TuReform> reform;
  std::optional<RepairHook> repair;
  bool bernoulli = true;
  Sampler sampler;

  Vector to_original(const Vector& x) const { return reform ? lift_rounded(*reform, x) : x; }

  SampleBatch draw(const Vector& x, Index k, const RngStream& rng) const {
    SampleBatch batch;
    if (bernoulli) {
      batch = sampler(x, k, rng);
      if (reform) batch = lifted(batch);
    } else {
      batch = sampler(reform ? lift_fractional(*reform, x) : x, k, rng);
    }
    if (repair) batch = repaired(batch);
    return batch;
  }

  SampleBatch lifted(const SampleBatch& batch) const {
    SampleBatch out;
    out.bits.resize(batch.size(), original.n);
    for (Index l = 0; l < batch.size(); ++l) out.bits.row(l) = lift_rounded(*reform, batch.row(l)).cast<std::uint8_t>().transpose();
    return out;
  }

  SampleBatch repaired(const SampleBatch& batch) const {
    SampleBatch out;
    out.bits.resize(batch.size(), batch.width());
    for (Index l = 0; l < batch.size(); ++l) out.bits.row(l) = (*repair)(batch.row(l)).cast<std::uint8_t>().transpose();
    return out;
  }

  SampleBatch single(const Vector& x) const {
    SampleBatch b;
    b.bits = x.cast<std::uint8_t>().transpose();
    if (repair) b = repaired(b);
    return b;
  }
};

}  // namespace

SolveResult solve(const BipInstance& inst, const SolveConfig& cfg, const TraceSink& sink) {
  validate(inst);
  validate(cfg);
  const Clock clock(cfg.zero_clock);
  SolveResult result;

  BipInstance working = inst;
  std::optional<RepairHook> repair;
  if (cfg.monotone && inst.Q.nonZeros() == 0) {
    MonotoneRelaxation mr = monotone_relax(inst);
    if (mr.applied) {
      working = std::move(mr.relaxed);
      repair = std::move(mr.repair);
      result.relaxed = true;
    }
  }

  const std::string sampler_name = cfg.sampler.empty() ? inst.meta.sampler : cfg.sampler;
  Pipeline pipe{inst, std::nullopt, repair, sampler_name.empty() || sampler_name == "default",
                make_sampler(sampler_name, inst, cfg.assign3d, cfg.threads)};

  if (cfg.tu == TuMode::kAuto && working.meta.has_tu_block()) {
    pipe.reform = tu_reformulate(working, working.meta.tu_rows, working.meta.tu_cols);
    result.reformulated = true;
  }
  const BipInstance& solved = pipe.reform ? pipe.reform->reduced : working;

  const SaddleForm sf = preprocess(build_saddle_form(solved));
  const StepSizes steps = default_steps(cfg.sigma);
  PenaltySchedule schedule(cfg.penalty);
  HaltState halt(cfg.halt);
  SolverState state = initial_state(sf, 0.0);
  Incumbent inc;

  std::int64_t round = 0;
  for (std::int64_t k = 1;; ++k) {
    if ((k - 1) % cfg.k_int == 0) state.rho = schedule.update();
    const bool trigger = k % cfg.k_int == 0;
    std::optional<SolverState> prev;
    if (trigger) prev = state;
    first_order_step(state, sf, steps);
    result.iterations = k;

    if (trigger) {
      const double before = inc.z_best;
      for (std::int64_t r = 0; r < cfg.k_r; ++r, ++round) {
        const RngStream rng{cfg.seed, static_cast<std::uint64_t>(round) << 32, 0};
        const SampleBatch batch = pipe.draw(state.x, cfg.k_b, rng);
        inc = eval_best(batch, inst, std::move(inc), clock.reported(), k);
      }
      result.sampling_rounds = round;
      const bool improved = inc.z_best < before;

      const ResidualReport rep = residuals(*prev, state, sf, steps);
      TraceRecord rec;
      rec.iter = k;
      rec.wall_seconds = clock.reported();
      rec.rho = state.rho;
      rec.sx_norm = rep.sx_norm;
      rec.sy_norm = rep.sy_norm;
      rec.primal_feas_gap = rep.primal_feas_gap;
      rec.binary_gap = rep.binary_gap;
      if (inc.has_value()) rec.z_best = inc.z_best;
      if (cfg.diagnostics) {
        const Vector p = pipe.reform ? lift_fractional(*pipe.reform, state.x) : state.x;
        const double delta = cfg.bound_rel_delta * std::max(std::abs(inc.z_best), 1.0);
        const BoundInputs bi =
            bound_inputs_from_state(p, inst, inc.has_value() ? &*inc.x_best : nullptr, delta, cfg.k_b);
        rec.phi = bi.feas.m > 0 && bi.feas.eta > 0.0 ? phi_bound(bi.feas) : 1.0;
        if (bi.opt) {
          if (bi.opt->lipschitz == 0.0) rec.psi = 1.0;
          else rec.psi = bi.opt->mu <= bi.opt->delta / bi.opt->lipschitz ? psi_bound(*bi.opt) : 0.0;
        }
      }
      result.trace.push_back(rec);
      if (sink) sink(rec);

      if (halt.check(rep, improved)) {
        result.reason = HaltReason::kConverged;
        break;
      }
    }
    if (cfg.max_iterations >= 0 && k >= cfg.max_iterations) {
      result.reason = HaltReason::kIterationLimit;
      break;
    }
    if (clock.elapsed() >= cfg.time_limit_seconds) {
      result.reason = HaltReason::kTimeLimit;
      break;
    }
  }

  const Vector rounded = (state.x.array() >= 0.5).cast<double>();
  const double before = inc.z_best;
  inc = eval_best(pipe.single(pipe.to_original(rounded)), inst, std::move(inc), clock.reported(),
                  result.iterations);
  if (inc.z_best < before) {
    TraceRecord rec = result.trace.empty() ? TraceRecord{} : result.trace.back();
    rec.iter = result.iterations;
    rec.wall_seconds = clock.reported();
    rec.rho = state.rho;
    rec.z_best = inc.z_best;
    result.trace.push_back(rec);
    if (sink) sink(rec);
  }
  result.incumbent = std::move(inc);
  result.seconds = clock.elapsed();
  return result;
}

}  // namespace pdsample
