#include "pdsample/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "parallel.hpp"

namespace pdsample {

namespace {

constexpr double kProbSlack = 1e-12;

Vector checked_probabilities(const Vector& p) {
  Vector q = p;
  for (Index i = 0; i < q.size(); ++i) {
    if (!(q[i] >= -kProbSlack && q[i] <= 1.0 + kProbSlack))
      throw InputError("sampling probabilities must lie in [0, 1]");
    q[i] = std::clamp(q[i], 0.0, 1.0);
  }
  return q;
}

}  // namespace

SampleBatch bernoulli_batch(const Vector& p, Index k, const RngStream& rng, int threads) {
  const Vector q = checked_probabilities(p);
  const Index n = q.size();
  SampleBatch batch;
  batch.bits.resize(k, n);
  detail::parallel_for(k, threads, [&](long l) {
    RngStream row = rng.with_lane(rng.lane + static_cast<std::uint64_t>(l));
    for (Index i = 0; i < n; ++i) batch.bits(l, i) = row.next_double() < q[i] ? 1 : 0;
  });
  return batch;
}

Incumbent eval_best(const SampleBatch& batch, const BipInstance& inst, Incumbent inc, double now_seconds,
                    std::int64_t iter) {
  if (batch.width() != inst.n) throw DimensionError("eval_best: batch width must equal n");
  const Index k = batch.size();
  if (k == 0) return inc;

  // Columns are candidates.
  const DenseMatrix xt = batch.bits.cast<double>().transpose();
  const double tol = constraints_integral(inst) ? 0.0 : kFeasTol;

  std::vector<char> feasible(k, 1);
  if (inst.A.rows() > 0) {
    const DenseMatrix slack = (inst.A * xt).colwise() - inst.b;
    for (Index l = 0; l < k; ++l) feasible[l] = slack.col(l).minCoeff() >= -tol;
  }
  if (inst.B.rows() > 0) {
    const DenseMatrix resid = (inst.B * xt).colwise() - inst.d;
    for (Index l = 0; l < k; ++l)
      if (feasible[l]) feasible[l] = resid.col(l).cwiseAbs().maxCoeff() <= tol;
  }

  const DenseMatrix qx = inst.Q * xt;
  const Eigen::RowVectorXd values =
      (xt.cwiseProduct(qx)).colwise().sum() + inst.c.transpose() * xt + Eigen::RowVectorXd::Constant(k, inst.c0);

  Index best = -1;
  for (Index l = 0; l < k; ++l)
    if (feasible[l] && (best < 0 || values[l] < values[best])) best = l;
  if (best < 0) return inc;

  Vector x = batch.row(best);
  const double z = eval_objective(inst, x);
  if (z < inc.z_best) {
    inc.x_best = std::move(x);
    inc.z_best = z;
    inc.found_at_seconds = now_seconds;
    inc.found_at_iter = iter;
  }
  return inc;
}

double assignment_cost(const Assignment3d& a, const Vector& cost, Index n) {
  double total = 0.0;
  for (Index i = 0; i < n; ++i) total += cost[triple_index(n, i, a.j[i], a.k[i])];
  return total;
}

Assignment3d partial_assignment(const Vector& p, Index n, double gamma) {
  if (gamma < 1.0) throw InputError("assignment sampler: gamma must be at least 1");
  const Index total = n * n * n;
  if (p.size() != total) throw DimensionError("assignment sampler: p must have n^3 entries");
  Assignment3d a{std::vector<Index>(n, -1), std::vector<Index>(n, -1)};
  if (n == 0) return a;

  const Index top = std::min<Index>(total, static_cast<Index>(std::ceil(gamma * static_cast<double>(n))));
  std::vector<Index> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + top, order.end(), [&](Index u, Index v) {
    return p[u] > p[v] || (p[u] == p[v] && u < v);
  });

  std::vector<char> used_j(n, 0), used_k(n, 0);
  for (Index t = 0; t < top; ++t) {
    const Index flat = order[t];
    const Index i = flat / (n * n);
    const Index j = (flat / n) % n;
    const Index k = flat % n;
    if (a.j[i] >= 0 || used_j[j] || used_k[k]) continue;
    a.j[i] = j;
    a.k[i] = k;
    used_j[j] = used_k[k] = 1;
  }
  return a;
}

Assignment3d complete_assignment(Assignment3d a, Index n, RngStream& rng) {
  std::vector<char> used_j(n, 0), used_k(n, 0);
  std::vector<Index> free_i;
  for (Index i = 0; i < n; ++i) {
    if (a.j[i] >= 0) {
      used_j[a.j[i]] = used_k[a.k[i]] = 1;
    } else {
      free_i.push_back(i);
    }
  }
  std::vector<Index> free_j, free_k;
  for (Index v = 0; v < n; ++v) {
    if (!used_j[v]) free_j.push_back(v);
    if (!used_k[v]) free_k.push_back(v);
  }
  const auto shuffle = [&rng](std::vector<Index>& v) {
    for (std::size_t s = v.size(); s > 1; --s) std::swap(v[s - 1], v[rng.next_below(s)]);
  };
  shuffle(free_j);
  shuffle(free_k);
  for (std::size_t t = 0; t < free_i.size(); ++t) {
    a.j[free_i[t]] = free_j[t];
    a.k[free_i[t]] = free_k[t];
  }
  return a;
}

void improve_assignment(Assignment3d& a, const Vector& cost, Index n, std::int64_t steps, RngStream& rng) {
  if (n < 2) return;
  const auto c = [&](Index i, Index j, Index k) { return cost[triple_index(n, i, j, k)]; };
  for (std::int64_t s = 0; s < steps; ++s) {
    const auto u = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(n)));
    auto v = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
    if (v >= u) ++v;
    const double now = c(u, a.j[u], a.k[u]) + c(v, a.j[v], a.k[v]);
    const double swap_j = c(u, a.j[v], a.k[u]) + c(v, a.j[u], a.k[v]);
    if (swap_j < now) {
      std::swap(a.j[u], a.j[v]);
      continue;
    }
    const double swap_k = c(u, a.j[u], a.k[v]) + c(v, a.j[v], a.k[u]);
    if (swap_k < now) std::swap(a.k[u], a.k[v]);
  }
}

SampleBatch sample_assignment3d(const Vector& p, Index n, Index k, const Assignment3dParams& params,
                                const Vector& cost, const RngStream& rng, int threads) {
  SampleBatch batch;
  batch.bits = BitMatrix::Zero(k, n * n * n);
  if (n == 0) return batch;
  if (cost.size() != n * n * n) throw DimensionError("assignment sampler: cost must have n^3 entries");
  const Assignment3d partial = partial_assignment(checked_probabilities(p), n, params.gamma);
  const std::int64_t steps = params.improvement_steps < 0 ? 2 * n : params.improvement_steps;
  detail::parallel_for(k, threads, [&](long l) {
    RngStream row = rng.with_lane(rng.lane + static_cast<std::uint64_t>(l));
    Assignment3d a = complete_assignment(partial, n, row);
    improve_assignment(a, cost, n, steps, row);
    for (Index i = 0; i < n; ++i) batch.bits(l, triple_index(n, i, a.j[i], a.k[i])) = 1;
  });
  return batch;
}

Vector repair_assignment3d(const Vector& x, const Vector& cost, Index n) {
  Vector out = x;
  std::vector<Index> ones;
  std::vector<int> count_i(n, 0), count_j(n, 0), count_k(n, 0);
  for (Index flat = 0; flat < out.size(); ++flat) {
    if (out[flat] != 1.0) continue;
    ones.push_back(flat);
    ++count_i[flat / (n * n)];
    ++count_j[(flat / n) % n];
    ++count_k[flat % n];
  }
  std::stable_sort(ones.begin(), ones.end(), [&](Index u, Index v) { return cost[u] > cost[v]; });
  for (const Index flat : ones) {
    const Index i = flat / (n * n), j = (flat / n) % n, k = flat % n;
    if (count_i[i] > 1 && count_j[j] > 1 && count_k[k] > 1) {
      out[flat] = 0.0;
      --count_i[i];
      --count_j[j];
      --count_k[k];
    }
  }
  return out;
}

namespace {

Index cube_root(Index total) {
  auto n = static_cast<Index>(std::llround(std::cbrt(static_cast<double>(total))));
  if (n * n * n != total) throw InputError("3D assignment instance must have n^3 variables");
  return n;
}

struct RepairRegistry {
  std::mutex mu;
  std::map<std::string, RepairFactory> factories;

  RepairRegistry() {
    factories["assign3d"] = [](const BipInstance& inst) -> RepairHook {
      const Index n = cube_root(inst.n);
      const Vector cost = inst.c;
      return [cost, n](const Vector& x) { return repair_assignment3d(x, cost, n); };
    };
  }
};

RepairRegistry& registry() {
  static RepairRegistry r;
  return r;
}

}  // namespace

void register_repair_hook(const std::string& problem_class, RepairFactory factory) {
  auto& r = registry();
  std::scoped_lock lock(r.mu);
  r.factories[problem_class] = std::move(factory);
}

std::optional<RepairHook> repair_hook_for(const BipInstance& inst) {
  auto& r = registry();
  std::scoped_lock lock(r.mu);
  const auto it = r.factories.find(inst.meta.problem_class);
  if (it == r.factories.end()) return std::nullopt;
  return it->second(inst);
}

MonotoneRelaxation monotone_relax(const BipInstance& inst) {
  if (inst.Q.nonZeros() != 0) throw InputError("monotone relaxation requires a linear objective");
  MonotoneRelaxation out{inst, std::nullopt, false};
  const bool nonneg = (inst.c.array() >= 0.0).all();
  const bool nonpos = (inst.c.array() <= 0.0).all();
  if ((!nonneg && !nonpos) || inst.B.rows() == 0) return out;

  const double sign = nonneg ? 1.0 : -1.0;
  BipInstance& r = out.relaxed;
  r.A = vstack(inst.A, SparseMatrix(sign * inst.B));
  r.b.resize(inst.b.size() + inst.d.size());
  r.b << inst.b, sign * inst.d;
  r.B = SparseMatrix(0, inst.n);
  r.B.makeCompressed();
  r.d = Vector(0);
  r.meta.tu_rows.clear();
  r.meta.tu_cols.clear();
  out.applied = true;
  out.repair = repair_hook_for(inst);
  return out;
}

Vector product_distribution_mean(const Vector& p) {
  const Index n = p.size();
  if (n > 20) throw InputError("product_distribution_mean: n must be at most 20");
  Vector mean = Vector::Zero(n);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t code = 0; code < count; ++code) {
    double prob = 1.0;
    for (Index i = 0; i < n; ++i) prob *= ((code >> i) & 1u) ? p[i] : 1.0 - p[i];
    for (Index i = 0; i < n; ++i)
      if ((code >> i) & 1u) mean[i] += prob;
  }
  return mean;
}

Sampler make_sampler(const std::string& name, const BipInstance& original, const Assignment3dParams& params,
                     int threads) {
  if (name.empty() || name == "default") {
    return [threads](const Vector& p, Index k, const RngStream& rng) { return bernoulli_batch(p, k, rng, threads); };
  }
  if (name == "assignment3d") {
    const Index n = cube_root(original.n);
    const Vector cost = original.c;
    return [n, cost, params, threads](const Vector& p, Index k, const RngStream& rng) {
      return sample_assignment3d(p, n, k, params, cost, rng, threads);
    };
  }
  throw InputError("unknown sampler: " + name);
}

}  // namespace pdsample
