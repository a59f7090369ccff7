#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "pdsample/generators.hpp"
#include "pdsample/instance_io.hpp"
#include "pdsample/oracle.hpp"
#include "support.hpp"

using namespace pdsample;
using testing::sparse;
using testing::vec;

namespace {

std::vector<BipInstance> corpus() {
  std::vector<BipInstance> out;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    out.push_back(gen_setcover(6, 10, seed));
    out.push_back(gen_knapsack(10, seed));
    out.push_back(gen_maxcut(6, seed, MaxCutForm::kQp));
    out.push_back(gen_maxcut(4, seed, MaxCutForm::kIp));
    out.push_back(gen_assign3d(2, seed));
    out.push_back(gen_facility(2, 3, seed));
    out.push_back(gen_tsp_mtz(3, seed));
  }
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pdsample_test_" + name);
}

}  // namespace

TEST_CASE("generated instances are valid, feasible and reproducible") {
  for (const BipInstance& inst : corpus()) {
    CAPTURE(inst.meta.problem_class);
    CHECK_NOTHROW(validate(inst));
    REQUIRE(inst.meta.nnz.has_value());
    CHECK(*inst.meta.nnz == inst.Q.nonZeros() + inst.A.nonZeros() + inst.B.nonZeros());
    CHECK(brute_force(inst).feasible);
    GeneratorConfig cfg{inst.meta.problem_class, 0, 0, 0, 0, inst.meta.seed};
    if (cfg.problem_class == "setcover") cfg.m = 6, cfg.n = 10;
    if (cfg.problem_class == "knapsack") cfg.n = 10;
    if (cfg.problem_class == "maxcut_qp") cfg.n = 6;
    if (cfg.problem_class == "maxcut_ip") cfg.n = 4;
    if (cfg.problem_class == "assign3d") cfg.n = 2;
    if (cfg.problem_class == "facility") cfg.n_f = 2, cfg.n_c = 3;
    if (cfg.problem_class == "tsp_mtz") cfg.n = 3;
    CHECK(structurally_equal(generate(cfg), inst));
  }
  CHECK_FALSE(structurally_equal(gen_knapsack(10, 1), gen_knapsack(10, 2)));
  CHECK_THROWS_AS(generate(GeneratorConfig{"dfj_tsp", 0, 3, 0, 0, 0}), InputError);
}

TEST_CASE("set cover") {
  const BipInstance one = gen_setcover(1, 1, 0);
  const OracleResult r = brute_force(one);
  CHECK(r.x_opt == vec({1}));
  const BipInstance inst = gen_setcover(40, 30, 9);
  for (Index row = 0; row < inst.A.rows(); ++row) {
    CHECK(inst.A.row(row).nonZeros() >= 1);
    CHECK(inst.A.row(row).nonZeros() <= std::max<Index>(2, 30 / 10));
  }
  CHECK(is_feasible(inst, Vector::Ones(30)));
  CHECK(inst.c.minCoeff() >= 1);
  CHECK(inst.c.maxCoeff() <= 100);
  CHECK(brute_force(gen_setcover(5, 10, 7)).feasible);
}

TEST_CASE("knapsack") {
  const BipInstance inst = knapsack_from_data(vec({1, 2}), vec({1, 2}), 1);
  const OracleResult r = brute_force(inst);
  CHECK(r.z_opt == -1.0);
  CHECK(r.x_opt == vec({1, 0}));
  const BipInstance g = gen_knapsack(12, 4);
  CHECK(g.A.rows() == 1);
  CHECK(g.B.rows() == 0);
  CHECK(is_feasible(g, Vector::Zero(12)));
  CHECK(g.b[0] == -std::floor(-DenseMatrix(g.A).sum() / 2));
}

TEST_CASE("max cut forms") {
  const BipInstance qp = maxcut_from_edges(2, {{0, 1, 1.0}}, MaxCutForm::kQp);
  const OracleResult r = brute_force(qp);
  CHECK(r.z_opt == -1.0);
  CHECK(eval_objective(qp, vec({0, 1})) == -1.0);
  CHECK(eval_objective(qp, vec({1, 1})) == 0.0);

  // Objective equals minus the cut value on every point.
  RngStream rng{6, 0, 0};
  for (int trial = 0; trial < 5; ++trial) {
    const BipInstance g = gen_maxcut(6, static_cast<std::uint64_t>(trial), MaxCutForm::kQp);
    const DenseMatrix w = DenseMatrix(g.Q);
    for (std::uint64_t code = 0; code < 64; ++code) {
      const Vector x = testing::bits(code, 6);
      double cut = 0;
      for (Index u = 0; u < 6; ++u)
        for (Index v = u + 1; v < 6; ++v)
          if (x[u] != x[v]) cut += w(u, v);
      CHECK(eval_objective(g, x) == doctest::Approx(-cut).epsilon(1e-12));
    }
  }

  const BipInstance zero = maxcut_from_edges(3, {{0, 1, 0.0}, {1, 2, 0.0}}, MaxCutForm::kQp);
  CHECK(brute_force(zero).z_opt == 0.0);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const OracleResult a = brute_force(gen_maxcut(5, seed, MaxCutForm::kQp));
    const OracleResult b = brute_force(gen_maxcut(5, seed, MaxCutForm::kIp));
    CHECK(a.z_opt == doctest::Approx(b.z_opt).epsilon(1e-12));
  }
}

TEST_CASE("3D assignment") {
  const OracleResult one = brute_force(gen_assign3d(1, 3));
  CHECK(one.feasible_count == 1);
  CHECK(one.x_opt == vec({1}));
  // Feasible points of the n = 2 problem are the (2!)^2 permutation pairs.
  const BipInstance two = gen_assign3d(2, 3);
  CHECK(brute_force(two).feasible_count == 4);
  CHECK(two.meta.sampler == "assignment3d");
  CHECK(two.meta.tu_rows.size() == 3);
  for (std::uint64_t code = 0; code < 256; ++code) {
    const Vector x = testing::bits(code, 8);
    if (is_feasible(two, x)) CHECK(x.sum() == 2.0);
  }
}

TEST_CASE("facility location") {
  const BipInstance one = gen_facility(1, 3, 2);
  for (std::uint64_t code = 0; code < 16; ++code) {
    const Vector x = testing::bits(code, 4);
    if (is_feasible(one, x)) CHECK(x[0] == 1.0);
  }
  const BipInstance inst = gen_facility(2, 2, 8);
  CHECK(brute_force(inst).z_opt == brute_force(gen_facility(2, 2, 8)).z_opt);
  Vector all = Vector::Zero(inst.n);
  all.head(2).setOnes();
  for (Index j = 0; j < 2; ++j) {
    const Index best = inst.c[2 + j] <= inst.c[2 + 2 + j] ? 0 : 1;
    all[2 + best * 2 + j] = 1;
  }
  CHECK(is_feasible(inst, all));
}

TEST_CASE("TSP with unary order variables") {
  CHECK_THROWS_AS(gen_tsp_mtz(2, 0), InputError);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BipInstance inst = gen_tsp_mtz(3, seed);
    const auto arc = [&](Index i, Index j) { return inst.c[tsp_arc_index(3, i, j)]; };
    const double forward = arc(0, 1) + arc(1, 2) + arc(2, 0);
    const double backward = arc(0, 2) + arc(2, 1) + arc(1, 0);
    const OracleResult r = brute_force(inst);
    CHECK(r.z_opt == std::min(forward, backward));
  }
  // Tour indicators satisfy the degree equalities; order rows are unary.
  const Index n = 4;
  const BipInstance inst = gen_tsp_mtz(n, 1);
  Vector x = Vector::Zero(inst.n);
  const std::vector<Index> tour{0, 2, 1, 3};
  for (Index t = 0; t < n; ++t) x[tsp_arc_index(n, tour[t], tour[(t + 1) % n])] = 1;
  CHECK((spmv(inst.B, x) - inst.d).norm() == 0.0);
  // City positions 2, 3, 4 (1-based) encoded as y_{ik} = [position >= k].
  const std::vector<Index> position{1, 3, 2, 4};
  for (Index i = 1; i < n; ++i)
    for (Index k = 3; k <= n; ++k) x[tsp_order_index(n, i, k)] = position[i] >= k ? 1 : 0;
  CHECK(is_feasible(inst, x));

  Vector bad = x;
  bad[tsp_order_index(n, 3, 3)] = 0;  // y row (0, 1) for city 3
  CHECK_FALSE(is_feasible(inst, bad));
}

TEST_CASE("oracle") {
  BipInstance unc = empty_instance(1);
  unc.c = vec({1});
  const OracleResult r = brute_force(unc);
  CHECK(r.x_opt == vec({0}));
  CHECK(r.z_opt == 0.0);
  CHECK(r.enumerated == 2);

  BipInstance bad = empty_instance(1);
  DenseMatrix a(2, 1);
  a << 1, -1;
  bad.A = sparse(a);
  bad.b = vec({1, 0});
  CHECK_FALSE(brute_force(bad).feasible);

  CHECK_THROWS_AS(brute_force(empty_instance(25)), InputError);

  // Ties resolve to the smallest binary value.
  BipInstance tie = empty_instance(3);
  tie.B = sparse(DenseMatrix::Ones(1, 3));
  tie.d = vec({1});
  CHECK(brute_force(tie).x_opt == vec({1, 0, 0}));
}

TEST_CASE("oracle agrees with plain enumeration") {
  RngStream rng{12, 0, 0};
  for (int trial = 0; trial < 60; ++trial) {
    BipInstance inst = testing::random_instance(1 + static_cast<Index>(rng.next_below(10)),
                                                static_cast<Index>(rng.next_below(4)),
                                                static_cast<Index>(rng.next_below(2)), rng);
    if (trial % 3 == 0) inst.c += testing::uniform_vector(inst.n, rng, -0.5, 0.5);
    const OracleResult r = brute_force(inst);
    const testing::NaiveOptimum naive = testing::naive_optimum(inst);
    CHECK(r.feasible == naive.z.has_value());
    CHECK(r.feasible_count == naive.feasible);
    if (r.feasible) {
      CHECK(r.z_opt == doctest::Approx(*naive.z).epsilon(1e-12));
      CHECK(is_feasible(inst, r.x_opt));
    }
  }
}

TEST_CASE("instance files round trip") {
  const auto path = temp_file("roundtrip.json");
  for (const BipInstance& inst : corpus()) {
    write_instance(inst, path);
    CHECK(structurally_equal(read_instance(path), inst));
  }
  BipInstance q = gen_maxcut(5, 3, MaxCutForm::kQp);
  q.c0 = 0.1 + 0.2;
  write_instance(q, path);
  CHECK(structurally_equal(read_instance(path), q));
  std::filesystem::remove(path);
}

TEST_CASE("instance files are checked on read") {
  nlohmann::json j = instance_to_json(gen_knapsack(3, 1));
  j["extra"] = 1;
  try {
    instance_from_json(j);
    FAIL("unknown key accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("extra") != std::string::npos);
  }

  j = instance_to_json(gen_knapsack(3, 1));
  j["b"] = {1.0, 2.0};
  CHECK_THROWS_AS(instance_from_json(j), DimensionError);

  j = instance_to_json(gen_knapsack(3, 1));
  j["meta"]["colour"] = "red";
  CHECK_THROWS_AS(instance_from_json(j), InputError);

  j = instance_to_json(gen_knapsack(3, 1));
  j["A"]["vals"][0] = 0.0;
  CHECK_THROWS_AS(instance_from_json(j), InputError);

  j = nlohmann::json{{"n", 2}, {"c", {1.0, 2.0}}};
  const BipInstance minimal = instance_from_json(j);
  CHECK(minimal.Q.nonZeros() == 0);
  CHECK(minimal.Q.rows() == 2);
  CHECK(minimal.A.rows() == 0);

  const auto path = temp_file("broken.json");
  std::ofstream(path) << "{\"n\": 2, \"c\": [1, ";
  CHECK_THROWS_AS(read_instance(path), InputError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_instance(temp_file("missing.json")), InputError);
}
