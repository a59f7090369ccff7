#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pdsample/model.hpp"

namespace pdsample {

// Benchmark instance generators. Every generator is a pure function of its
// size parameters and seed; all random data is integral except max-cut weights.
// Maximization problems are emitted negated, as minimization.

BipInstance setcover_from_sets(const std::vector<std::vector<Index>>& rows, const Vector& cost, Index n);
BipInstance gen_setcover(Index m, Index n, std::uint64_t seed);

BipInstance knapsack_from_data(const Vector& values, const Vector& weights, double capacity);
BipInstance gen_knapsack(Index n, std::uint64_t seed);

enum class MaxCutForm { kQp, kIp };

struct WeightedEdge {
  Index u = 0;
  Index v = 0;
  double w = 0.0;
};

/// QP: Q_uv = Q_vu = w_uv so <x,Qx> = 2 sum w x_u x_v, c_u = -sum_v w_uv.
/// IP: variables (x, y_e) with y_e <= x_u, y_e <= x_v, y_e >= x_u + x_v - 1.
BipInstance maxcut_from_edges(Index n, const std::vector<WeightedEdge>& edges, MaxCutForm form);
BipInstance gen_maxcut(Index n, std::uint64_t seed, MaxCutForm form);

/// n^3 variables x_{ijk} at (i n + j) n + k; rows are the i-, j-, k-groups.
BipInstance gen_assign3d(Index n, std::uint64_t seed);

/// Variables x (n_f) then y_{ij} at n_f + i n_c + j.
BipInstance gen_facility(Index n_f, Index n_c, std::uint64_t seed);

/// Variables x_{ij} (i != j) in row-major order, then y_{ik} for cities
/// i = 1..n-1 (0-based) and k = 3..n.
BipInstance gen_tsp_mtz(Index n, std::uint64_t seed);

/// Index of x_{ij} in the TSP layout.
Index tsp_arc_index(Index n, Index i, Index j);
/// Index of y_{ik} (i in 1..n-1, k in 3..n) in the TSP layout.
Index tsp_order_index(Index n, Index i, Index k);

struct GeneratorConfig {
  std::string problem_class;
  Index m = 0;
  Index n = 0;
  Index n_f = 0;
  Index n_c = 0;
  std::uint64_t seed = 0;
};

BipInstance generate(const GeneratorConfig& cfg);

/// nnz(Q) + nnz(K).
std::int64_t model_nnz(const BipInstance& inst);

}  // namespace pdsample
