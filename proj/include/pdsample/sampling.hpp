#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pdsample/model.hpp"
#include "pdsample/rng.hpp"

namespace pdsample {

using BitMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// k_b x n binary candidates, one per row.
struct SampleBatch {
  BitMatrix bits;

  Index size() const { return bits.rows(); }
  Index width() const { return bits.cols(); }
  Vector row(Index l) const { return bits.row(l).cast<double>().transpose(); }
};

struct Incumbent {
  std::optional<Vector> x_best;
  double z_best = std::numeric_limits<double>::infinity();
  double found_at_seconds = 0.0;
  std::int64_t found_at_iter = 0;

  bool has_value() const { return x_best.has_value(); }
};

/// Row l draws bit i from lane (rng.lane + l) at counter position i, so the
/// batch is identical for any thread count.
SampleBatch bernoulli_batch(const Vector& p, Index k, const RngStream& rng, int threads = 1);

/// Replaces the incumbent with the best feasible row of `batch` (evaluated on
/// the original instance) if it is strictly better. Ties keep the incumbent.
Incumbent eval_best(const SampleBatch& batch, const BipInstance& inst, Incumbent inc,
                    double now_seconds = 0.0, std::int64_t iter = 0);

/// Assignment of the 3D problem: triple (i, j[i], k[i]) for each i.
struct Assignment3d {
  std::vector<Index> j;
  std::vector<Index> k;
};

struct Assignment3dParams {
  double gamma = 4.0;
  std::int64_t improvement_steps = -1;  // L; negative means 2n
};

/// Flat index of x_{ijk}.
inline Index triple_index(Index n, Index i, Index j, Index k) { return (i * n + j) * n + k; }

double assignment_cost(const Assignment3d& a, const Vector& cost, Index n);

/// Greedy non-conflicting triples from the ceil(gamma n) largest entries of p
/// (ties by lower flat index). Unassigned i carry j = k = -1.
Assignment3d partial_assignment(const Vector& p, Index n, double gamma);

/// Fills unassigned slots by pairing the free j and k indices through one
/// random permutation each.
Assignment3d complete_assignment(Assignment3d partial, Index n, RngStream& rng);

/// L random-pair interchange steps: swap j (else k) between two triples when
/// that lowers the cost.
void improve_assignment(Assignment3d& a, const Vector& cost, Index n, std::int64_t steps, RngStream& rng);

/// Customized sampler: every returned row is a feasible 3D assignment.
SampleBatch sample_assignment3d(const Vector& p, Index n, Index k, const Assignment3dParams& params,
                                const Vector& cost, const RngStream& rng, int threads = 1);

/// Maps a superset solution of a relaxed instance back to a solution of the
/// original equality system.
using RepairHook = std::function<Vector(const Vector&)>;
using RepairFactory = std::function<RepairHook(const BipInstance&)>;

void register_repair_hook(const std::string& problem_class, RepairFactory factory);
std::optional<RepairHook> repair_hook_for(const BipInstance& inst);

/// Drops the costliest redundant ones of a 3D-assignment cover while every
/// covering row keeps at least one entry.
Vector repair_assignment3d(const Vector& x, const Vector& cost, Index n);

struct MonotoneRelaxation {
  BipInstance relaxed;
  std::optional<RepairHook> repair;
  bool applied = false;
};

/// With a sign-uniform linear objective, equalities become one-sided
/// inequalities: Bx >= d for c >= 0, Bx <= d for c <= 0.
MonotoneRelaxation monotone_relax(const BipInstance& inst);

/// Mean of the product distribution with marginals p, by full enumeration.
Vector product_distribution_mean(const Vector& p);

/// Candidate generator over the original variable space.
using Sampler = std::function<SampleBatch(const Vector& p, Index k, const RngStream& rng)>;

/// "default" (Bernoulli) or "assignment3d".
Sampler make_sampler(const std::string& name, const BipInstance& original, const Assignment3dParams& params,
                     int threads);

}  // namespace pdsample
