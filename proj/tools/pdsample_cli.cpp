#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>

#include "pdsample/bench.hpp"
#include "pdsample/generators.hpp"
#include "pdsample/instance_io.hpp"
#include "pdsample/oracle.hpp"
#include "pdsample/solver.hpp"

namespace {

using namespace pdsample;

constexpr int kExitFound = 0;
constexpr int kExitNoIncumbent = 2;
constexpr int kExitInput = 3;
constexpr int kExitDivergence = 4;

// Classes stored negated; the reported objective flips them back.
bool maximization(const std::string& cls) {
  static const std::set<std::string> classes{"knapsack", "maxcut_qp", "maxcut_ip"};
  return classes.contains(cls);
}

struct SolveFlags {
  SolveConfig cfg;
  std::string tu = "auto";
  std::string trace;
};

void add_solve_flags(CLI::App& app, SolveFlags& f) {
  auto& c = f.cfg;
  app.add_option("--sigma", c.sigma, "step-size parameter in [1e-6, 1)");
  app.add_option("--k-int", c.k_int, "iterations between sampling triggers");
  app.add_option("--k-r", c.k_r, "sampling rounds per trigger");
  app.add_option("--batch", c.k_b, "samples per round");
  app.add_option("--time-limit", c.time_limit_seconds, "wall-clock limit in seconds");
  app.add_option("--max-iter", c.max_iterations, "iteration limit (negative: none)");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--tu", f.tu, "equality elimination")->check(CLI::IsMember({"auto", "off"}));
  app.add_option("--sampler", c.sampler, "default or assignment3d (default: from the instance)");
  app.add_option("--rho-min", c.penalty.rho_min);
  app.add_option("--rho-max", c.penalty.rho_max);
  app.add_option("--growth-T", c.penalty.T);
  app.add_option("--growth-p", c.penalty.p);
  app.add_option("--rho-delta", c.penalty.delta);
  app.add_option_function<double>(
      "--tol", [&c](double t) { c.halt.tol_primal = c.halt.tol_dual = c.halt.tol_binary = t; },
      "tolerance for every halting indicator");
  app.add_flag("--monotone", c.monotone, "relax equalities when the objective is sign-uniform");
  app.add_flag("--diagnostics", c.diagnostics, "add sampling bound values to the trace");
  app.add_option("--threads", c.threads, "worker threads for sampling");
  app.add_flag("--deterministic", c.zero_clock, "write wall_seconds as 0 in the trace");
}

void finish_flags(SolveFlags& f) { f.cfg.tu = f.tu == "off" ? TuMode::kOff : TuMode::kAuto; }

int run_solve(const std::string& path, SolveFlags& f) {
  finish_flags(f);
  const BipInstance inst = read_instance(path);
  std::ofstream trace;
  if (!f.trace.empty()) {
    trace.open(f.trace);
    if (!trace) throw InputError("cannot open " + f.trace + " for writing");
  }
  TraceSink sink;
  if (trace.is_open()) sink = [&trace](const TraceRecord& r) { trace << to_json(r).dump() << '\n' << std::flush; };

  const SolveResult res = solve(inst, f.cfg, sink);
  nlohmann::json out;
  out["status"] = res.incumbent.has_value() ? "found" : "no_incumbent";
  out["iterations"] = res.iterations;
  out["sampling_rounds"] = res.sampling_rounds;
  out["halt"] = to_string(res.reason);
  out["reformulated"] = res.reformulated;
  out["seconds"] = res.seconds;
  if (res.incumbent.has_value()) {
    const double z = res.incumbent.z_best;
    out["z_best"] = z;
    out["objective"] = maximization(inst.meta.problem_class) ? -z : z;
    out["found_at_seconds"] = res.incumbent.found_at_seconds;
    out["found_at_iter"] = res.incumbent.found_at_iter;
    const Vector& x = *res.incumbent.x_best;
    std::vector<int> bits(x.size());
    for (Index i = 0; i < x.size(); ++i) bits[i] = static_cast<int>(x[i]);
    out["x"] = bits;
  }
  std::cout << out.dump() << '\n';
  return res.incumbent.has_value() ? kExitFound : kExitNoIncumbent;
}

int run_oracle(const std::string& path) {
  const BipInstance inst = read_instance(path);
  const OracleResult res = brute_force(inst);
  nlohmann::json out;
  out["feasible"] = res.feasible;
  out["enumerated"] = res.enumerated;
  out["feasible_count"] = res.feasible_count;
  if (res.feasible) {
    out["z_opt"] = res.z_opt;
    out["objective"] = maximization(inst.meta.problem_class) ? -res.z_opt : res.z_opt;
    std::vector<int> bits(res.x_opt.size());
    for (Index i = 0; i < res.x_opt.size(); ++i) bits[i] = static_cast<int>(res.x_opt[i]);
    out["x_opt"] = bits;
  }
  std::cout << out.dump() << '\n';
  return res.feasible ? kExitFound : kExitNoIncumbent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-based heuristic solver for binary integer programs"};
  app.require_subcommand(1);

  std::string solve_path;
  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance file");
  solve_cmd->add_option("file", solve_path)->required();
  add_solve_flags(*solve_cmd, solve_flags);
  solve_cmd->add_option("--trace", solve_flags.trace, "write JSONL trace records to PATH");

  GeneratorConfig gen_cfg;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("class", gen_cfg.problem_class)
      ->required()
      ->check(CLI::IsMember({"setcover", "knapsack", "maxcut_qp", "maxcut_ip", "assign3d", "facility", "tsp_mtz"}));
  gen_cmd->add_option("--m", gen_cfg.m, "set cover: number of elements");
  gen_cmd->add_option("--n", gen_cfg.n, "variables, vertices or cities");
  gen_cmd->add_option("--nf", gen_cfg.n_f, "facility: facilities");
  gen_cmd->add_option("--nc", gen_cfg.n_c, "facility: customers");
  gen_cmd->add_option("--seed", gen_cfg.seed);
  gen_cmd->add_option("-o,--output", gen_out, "output path (default: stdout)");

  std::string oracle_path;
  auto* oracle_cmd = app.add_subcommand("oracle", "solve a small instance by enumeration");
  oracle_cmd->add_option("file", oracle_path)->required();

  std::string bench_dir, bench_out;
  SolveFlags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "solve every instance in a directory");
  bench_cmd->add_option("dir", bench_dir)->required();
  add_solve_flags(*bench_cmd, bench_flags);
  bench_cmd->add_option("-o,--output", bench_out, "report path stem")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve_cmd) return run_solve(solve_path, solve_flags);
    if (*gen_cmd) {
      const BipInstance inst = generate(gen_cfg);
      if (gen_out.empty()) std::cout << instance_to_json(inst).dump() << '\n';
      else write_instance(inst, gen_out);
      return 0;
    }
    if (*oracle_cmd) return run_oracle(oracle_path);
    if (*bench_cmd) {
      finish_flags(bench_flags);
      const BenchReport report = bench(bench_dir, bench_flags.cfg);
      write_report(report, bench_out);
      std::cout << groups_csv(report);
      return 0;
    }
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
