#include "pdsample/generators.hpp"

#include <algorithm>
#include <cmath>

#include "pdsample/rng.hpp"
#include "pdsample/sampling.hpp"

namespace pdsample {

namespace {

// Distinct generator families draw from distinct lanes of the same seed.
enum Lane : std::uint64_t { kSetCover = 1, kKnapsack, kMaxCut, kAssign3d, kFacility, kTsp };

RngStream stream(std::uint64_t seed, Lane lane) { return RngStream{seed, lane, 0}; }

std::vector<Index> sample_distinct(Index count, Index universe, RngStream& rng) {
  // Floyd's algorithm: count distinct values from [0, universe).
  std::vector<Index> picked;
  picked.reserve(count);
  for (Index j = universe - count; j < universe; ++j) {
    const auto t = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(j) + 1));
    if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
      picked.push_back(t);
    } else {
      picked.push_back(j);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

BipInstance finish(BipInstance inst, std::string cls, std::uint64_t seed) {
  inst.meta.problem_class = std::move(cls);
  inst.meta.seed = seed;
  inst.Q.makeCompressed();
  inst.A.makeCompressed();
  inst.B.makeCompressed();
  inst.meta.nnz = model_nnz(inst);
  validate(inst);
  return inst;
}

}  // namespace

std::int64_t model_nnz(const BipInstance& inst) { return inst.nnz(); }

BipInstance setcover_from_sets(const std::vector<std::vector<Index>>& rows, const Vector& cost, Index n) {
  BipInstance inst = empty_instance(n);
  inst.c = cost;
  std::vector<Triplet> entries;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const Index col : rows[r]) entries.emplace_back(static_cast<int>(r), static_cast<int>(col), 1.0);
  inst.A = sparse_from_triplets(static_cast<Index>(rows.size()), n, entries);
  inst.b = Vector::Ones(static_cast<Index>(rows.size()));
  return finish(std::move(inst), "setcover", 0);
}

BipInstance gen_setcover(Index m, Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw InputError("setcover: m and n must be at least 1");
  RngStream rng = stream(seed, kSetCover);
  Vector cost(n);
  for (Index i = 0; i < n; ++i) cost[i] = static_cast<double>(rng.uniform_int(1, 100));
  const Index max_size = std::max<Index>(2, n / 10);
  std::vector<std::vector<Index>> rows(m);
  for (Index j = 0; j < m; ++j) {
    const Index size = std::min<Index>(n, rng.uniform_int(2, max_size));
    rows[j] = sample_distinct(size, n, rng);
  }
  BipInstance inst = setcover_from_sets(rows, cost, n);
  return finish(std::move(inst), "setcover", seed);
}

BipInstance knapsack_from_data(const Vector& values, const Vector& weights, double capacity) {
  if (values.size() != weights.size()) throw DimensionError("knapsack: values and weights differ in length");
  const Index n = values.size();
  BipInstance inst = empty_instance(n);
  inst.c = -values;
  std::vector<Triplet> entries;
  for (Index i = 0; i < n; ++i) entries.emplace_back(0, static_cast<int>(i), -weights[i]);
  inst.A = sparse_from_triplets(1, n, entries);
  inst.b = Vector::Constant(1, -capacity);
  return finish(std::move(inst), "knapsack", 0);
}

BipInstance gen_knapsack(Index n, std::uint64_t seed) {
  if (n < 1) throw InputError("knapsack: n must be at least 1");
  RngStream rng = stream(seed, kKnapsack);
  Vector values(n), weights(n);
  for (Index i = 0; i < n; ++i) {
    values[i] = static_cast<double>(rng.uniform_int(1, 100));
    weights[i] = static_cast<double>(rng.uniform_int(1, 100));
  }
  const double capacity = std::floor(weights.sum() / 2.0);
  return finish(knapsack_from_data(values, weights, capacity), "knapsack", seed);
}

BipInstance maxcut_from_edges(Index n, const std::vector<WeightedEdge>& edges, MaxCutForm form) {
  if (n < 2) throw InputError("maxcut: at least two vertices are required");
  if (form == MaxCutForm::kQp) {
    BipInstance inst = empty_instance(n);
    std::vector<Triplet> q;
    for (const auto& e : edges) {
      if (e.u == e.v) throw InputError("maxcut: self loops are not allowed");
      q.emplace_back(static_cast<int>(e.u), static_cast<int>(e.v), e.w);
      q.emplace_back(static_cast<int>(e.v), static_cast<int>(e.u), e.w);
      inst.c[e.u] -= e.w;
      inst.c[e.v] -= e.w;
    }
    inst.Q = sparse_from_triplets(n, n, q);
    return finish(std::move(inst), "maxcut_qp", 0);
  }

  const auto num_edges = static_cast<Index>(edges.size());
  BipInstance inst = empty_instance(n + num_edges);
  std::vector<Triplet> a;
  inst.b = Vector::Zero(3 * num_edges);
  for (Index e = 0; e < num_edges; ++e) {
    const auto& edge = edges[e];
    const int y = static_cast<int>(n + e);
    const int row = static_cast<int>(3 * e);
    inst.c[edge.u] -= edge.w;
    inst.c[edge.v] -= edge.w;
    inst.c[y] += 2.0 * edge.w;
    // x_u - y >= 0
    a.emplace_back(row, static_cast<int>(edge.u), 1.0);
    a.emplace_back(row, y, -1.0);
    // x_v - y >= 0
    a.emplace_back(row + 1, static_cast<int>(edge.v), 1.0);
    a.emplace_back(row + 1, y, -1.0);
    // y - x_u - x_v >= -1
    a.emplace_back(row + 2, y, 1.0);
    a.emplace_back(row + 2, static_cast<int>(edge.u), -1.0);
    a.emplace_back(row + 2, static_cast<int>(edge.v), -1.0);
    inst.b[row + 2] = -1.0;
  }
  inst.A = sparse_from_triplets(3 * num_edges, n + num_edges, a);
  return finish(std::move(inst), "maxcut_ip", 0);
}

BipInstance gen_maxcut(Index n, std::uint64_t seed, MaxCutForm form) {
  if (n < 2) throw InputError("maxcut: n must be at least 2");
  RngStream rng = stream(seed, kMaxCut);
  std::vector<WeightedEdge> edges;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) {
      const bool present = rng.next_double() < 0.5;
      const double w = rng.uniform_real(-8.0, 10.0);
      if (present) edges.push_back({u, v, w});
    }
  BipInstance inst = maxcut_from_edges(n, edges, form);
  return finish(std::move(inst), form == MaxCutForm::kQp ? "maxcut_qp" : "maxcut_ip", seed);
}

BipInstance gen_assign3d(Index n, std::uint64_t seed) {
  if (n < 1) throw InputError("assign3d: n must be at least 1");
  RngStream rng = stream(seed, kAssign3d);
  const Index total = n * n * n;
  BipInstance inst = empty_instance(total);
  for (Index v = 0; v < total; ++v) inst.c[v] = static_cast<double>(rng.uniform_int(1, 100));
  std::vector<Triplet> b;
  b.reserve(3 * total);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        const int col = static_cast<int>(triple_index(n, i, j, k));
        b.emplace_back(static_cast<int>(i), col, 1.0);
        b.emplace_back(static_cast<int>(n + j), col, 1.0);
        b.emplace_back(static_cast<int>(2 * n + k), col, 1.0);
      }
  inst.B = sparse_from_triplets(3 * n, total, b);
  inst.d = Vector::Ones(3 * n);

  // The i- and j-groups form a bipartite incidence matrix of rank 2n-1. Drop
  // j-row 0 and use the spanning tree {(i,0,0)} + {(0,j,0): j >= 1} as basis.
  for (Index i = 0; i < n; ++i) inst.meta.tu_rows.push_back(i);
  for (Index j = 1; j < n; ++j) inst.meta.tu_rows.push_back(n + j);
  for (Index i = 0; i < n; ++i) inst.meta.tu_cols.push_back(triple_index(n, i, 0, 0));
  for (Index j = 1; j < n; ++j) inst.meta.tu_cols.push_back(triple_index(n, 0, j, 0));
  inst.meta.sampler = "assignment3d";
  return finish(std::move(inst), "assign3d", seed);
}

BipInstance gen_facility(Index n_f, Index n_c, std::uint64_t seed) {
  if (n_f < 1 || n_c < 1) throw InputError("facility: n_f and n_c must be at least 1");
  RngStream rng = stream(seed, kFacility);
  const Index n = n_f + n_f * n_c;
  BipInstance inst = empty_instance(n);
  for (Index v = 0; v < n; ++v) inst.c[v] = static_cast<double>(rng.uniform_int(1, 100));
  const auto y = [&](Index i, Index j) { return static_cast<int>(n_f + i * n_c + j); };
  std::vector<Triplet> b, a;
  for (Index i = 0; i < n_f; ++i)
    for (Index j = 0; j < n_c; ++j) {
      b.emplace_back(static_cast<int>(j), y(i, j), 1.0);
      const int row = static_cast<int>(i * n_c + j);
      a.emplace_back(row, static_cast<int>(i), 1.0);
      a.emplace_back(row, y(i, j), -1.0);
    }
  inst.B = sparse_from_triplets(n_c, n, b);
  inst.d = Vector::Ones(n_c);
  inst.A = sparse_from_triplets(n_f * n_c, n, a);
  inst.b = Vector::Zero(n_f * n_c);
  for (Index j = 0; j < n_c; ++j) {
    inst.meta.tu_rows.push_back(j);
    inst.meta.tu_cols.push_back(y(0, j));
  }
  return finish(std::move(inst), "facility", seed);
}

Index tsp_arc_index(Index n, Index i, Index j) { return i * (n - 1) + (j < i ? j : j - 1); }

Index tsp_order_index(Index n, Index i, Index k) { return n * (n - 1) + (i - 1) * (n - 2) + (k - 3); }

BipInstance gen_tsp_mtz(Index n, std::uint64_t seed) {
  if (n < 3) throw InputError("tsp: n must be at least 3");
  RngStream rng = stream(seed, kTsp);
  const Index total = n * (n - 1) + (n - 1) * (n - 2);
  BipInstance inst = empty_instance(total);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) inst.c[tsp_arc_index(n, i, j)] = static_cast<double>(rng.uniform_int(1, 100));

  std::vector<Triplet> b;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const int col = static_cast<int>(tsp_arc_index(n, i, j));
      b.emplace_back(static_cast<int>(i), col, 1.0);
      b.emplace_back(static_cast<int>(n + j), col, 1.0);
    }
  inst.B = sparse_from_triplets(2 * n, total, b);
  inst.d = Vector::Ones(2 * n);

  std::vector<Triplet> a;
  std::vector<double> rhs;
  int row = 0;
  // u_i - u_j + n x_ij <= n - 1 with u_i = 2 + sum_k y_ik, written as >=.
  for (Index i = 1; i < n; ++i)
    for (Index j = 1; j < n; ++j) {
      if (i == j) continue;
      for (Index k = 3; k <= n; ++k) {
        a.emplace_back(row, static_cast<int>(tsp_order_index(n, i, k)), -1.0);
        a.emplace_back(row, static_cast<int>(tsp_order_index(n, j, k)), 1.0);
      }
      a.emplace_back(row, static_cast<int>(tsp_arc_index(n, i, j)), -static_cast<double>(n));
      rhs.push_back(-static_cast<double>(n - 1));
      ++row;
    }
  // y_{i,k-1} >= y_{ik}.
  for (Index i = 1; i < n; ++i)
    for (Index k = 4; k <= n; ++k) {
      a.emplace_back(row, static_cast<int>(tsp_order_index(n, i, k - 1)), 1.0);
      a.emplace_back(row, static_cast<int>(tsp_order_index(n, i, k)), -1.0);
      rhs.push_back(0.0);
      ++row;
    }
  inst.A = sparse_from_triplets(row, total, a);
  inst.b = Eigen::Map<const Vector>(rhs.data(), static_cast<Index>(rhs.size()));

  // Degree rows: drop in-row 0; basis is a spanning tree of the arc graph.
  for (Index i = 0; i < n; ++i) inst.meta.tu_rows.push_back(i);
  for (Index j = 1; j < n; ++j) inst.meta.tu_rows.push_back(n + j);
  for (Index j = 1; j < n; ++j) inst.meta.tu_cols.push_back(tsp_arc_index(n, 0, j));
  for (Index i = 2; i < n; ++i) inst.meta.tu_cols.push_back(tsp_arc_index(n, i, 1));
  inst.meta.tu_cols.push_back(tsp_arc_index(n, 1, 2));
  inst.meta.tu_cols.push_back(tsp_arc_index(n, 1, 0));
  return finish(std::move(inst), "tsp_mtz", seed);
}

BipInstance generate(const GeneratorConfig& cfg) {
  const auto& cls = cfg.problem_class;
  if (cls == "setcover") return gen_setcover(cfg.m, cfg.n, cfg.seed);
  if (cls == "knapsack") return gen_knapsack(cfg.n, cfg.seed);
  if (cls == "maxcut_qp") return gen_maxcut(cfg.n, cfg.seed, MaxCutForm::kQp);
  if (cls == "maxcut_ip") return gen_maxcut(cfg.n, cfg.seed, MaxCutForm::kIp);
  if (cls == "assign3d") return gen_assign3d(cfg.n, cfg.seed);
  if (cls == "facility") return gen_facility(cfg.n_f, cfg.n_c, cfg.seed);
  if (cls == "tsp_mtz") return gen_tsp_mtz(cfg.n, cfg.seed);
  throw InputError("unknown problem class: " + cls);
}

}  // namespace pdsample
