#include <doctest.h>

#include "pdsample/generators.hpp"
#include "pdsample/oracle.hpp"
#include "pdsample/tu.hpp"
#include "support.hpp"

using namespace pdsample;
using testing::sparse;
using testing::vec;

TEST_CASE("single equality elimination") {
  BipInstance inst = empty_instance(2);
  inst.c = vec({2, 1});
  inst.B = sparse(DenseMatrix::Ones(1, 2));
  inst.d = vec({1});
  const TuReform r = tu_reformulate(inst, {0}, {0});
  CHECK(r.s == vec({1}));
  CHECK(DenseMatrix(r.S)(0, 0) == -1.0);
  CHECK(r.reduced.n == 1);
  CHECK(r.reduced.c == vec({-1}));
  CHECK(r.reduced.c0 == 2.0);
  CHECK(r.reduced.A.rows() == 2);  // box rows for x_0
  CHECK(lift(r, vec({1})) == vec({0, 1}));
  CHECK(lift(r, vec({0})) == vec({1, 0}));

  const OracleResult red = brute_force(r.reduced);
  REQUIRE(red.feasible);
  CHECK(red.z_opt == -1.0 + 2.0);
  CHECK(eval_objective(inst, lift(r, red.x_opt)) == brute_force(inst).z_opt);
}

TEST_CASE("identity block forces every variable") {
  BipInstance inst = empty_instance(3);
  inst.c = vec({1, 2, 3});
  inst.B = sparse(DenseMatrix::Identity(3, 3));
  inst.d = Vector::Zero(3);
  const TuReform r = tu_reformulate(inst, {0, 1, 2}, {0, 1, 2});
  CHECK(r.reduced.n == 0);
  CHECK(r.s == Vector::Zero(3));
  CHECK(lift(r, Vector(0)) == Vector::Zero(3));
}

TEST_CASE("reformulation errors") {
  BipInstance inst = empty_instance(2);
  inst.B = sparse(DenseMatrix::Ones(2, 2));
  inst.d = vec({1, 1});
  CHECK_THROWS_AS(tu_reformulate(inst, {0, 1}, {0, 1}), SingularMatrixError);

  BipInstance frac = empty_instance(2);
  frac.B = sparse(DenseMatrix::Ones(1, 2));
  frac.d = vec({0.5});
  CHECK_THROWS_AS(tu_reformulate(frac, {0}, {0}), InputError);
  CHECK_THROWS(tu_reformulate(frac, {0}, {0, 1}));
}

TEST_CASE("lift rejects points off the binary lattice") {
  BipInstance inst = empty_instance(3);
  DenseMatrix b(1, 3);
  b << 1, 1, 1;
  inst.B = sparse(b);
  inst.d = vec({1});
  const TuReform r = tu_reformulate(inst, {0}, {0});
  CHECK_THROWS_AS(lift(r, vec({1, 1})), InputError);  // x_0 = -1
  CHECK(lift_rounded(r, vec({1, 1}))[0] == 0.0);
  CHECK(lift_fractional(r, vec({0.25, 0.25}))[0] == doctest::Approx(0.5));
}

TEST_CASE("small TU verification") {
  DenseMatrix a(2, 2);
  a << 1, 1, 0, 1;
  CHECK(verify_tu_small(a));
  a << 1, 1, -1, 1;
  CHECK_FALSE(verify_tu_small(a));
  CHECK(verify_tu_small(vec({1, -1, 0, 1})));
  CHECK_FALSE(verify_tu_small(vec({1, 2})));
  CHECK_THROWS_AS(verify_tu_small(DenseMatrix::Zero(13, 13)), InputError);

  // Generator blocks are TU.
  CHECK(verify_tu_small(DenseMatrix(gen_assign3d(2, 1).B).topRows(4)));
  CHECK(verify_tu_small(DenseMatrix(gen_facility(2, 3, 1).B)));
  CHECK(verify_tu_small(DenseMatrix(gen_tsp_mtz(3, 1).B)));
}

TEST_CASE("reduced and original optima agree on generated instances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (const BipInstance& inst : {gen_assign3d(2, seed), gen_facility(2, 3, seed), gen_tsp_mtz(3, seed)}) {
      const TuReform r = tu_reformulate(inst, inst.meta.tu_rows, inst.meta.tu_cols);
      CHECK(r.reduced.n == inst.n - static_cast<Index>(inst.meta.tu_cols.size()));
      const OracleResult full = brute_force(inst);
      const OracleResult red = brute_force(r.reduced);
      REQUIRE(full.feasible);
      REQUIRE(red.feasible);
      CHECK(red.z_opt == full.z_opt);
      const Vector x = lift(r, red.x_opt);
      CHECK(is_feasible(inst, x));
      CHECK(eval_objective(inst, x) == full.z_opt);
      CHECK(red.feasible_count == full.feasible_count);

      // Objective consistency on every reduced feasible point.
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << r.reduced.n); ++code) {
        const Vector xb = testing::bits(code, r.reduced.n);
        if (!is_feasible(r.reduced, xb)) continue;
        CHECK(eval_objective(r.reduced, xb) == doctest::Approx(eval_objective(inst, lift(r, xb))).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("quadratic objectives carry through the elimination") {
  RngStream rng{2, 0, 0};
  for (int trial = 0; trial < 20; ++trial) {
    BipInstance inst = gen_facility(2, 2, static_cast<std::uint64_t>(trial));
    DenseMatrix q = DenseMatrix::Zero(inst.n, inst.n);
    for (Index i = 0; i < inst.n; ++i)
      for (Index j = i; j < inst.n; ++j)
        if (rng.next_double() < 0.3) q(i, j) = q(j, i) = static_cast<double>(rng.uniform_int(-4, 4));
    inst.Q = sparse(q);
    inst.c0 = 3;
    const TuReform r = tu_reformulate(inst, inst.meta.tu_rows, inst.meta.tu_cols);
    const OracleResult full = brute_force(inst);
    const OracleResult red = brute_force(r.reduced);
    REQUIRE(full.feasible);
    REQUIRE(red.feasible);
    CHECK(red.z_opt == full.z_opt);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << r.reduced.n); ++code) {
      const Vector xb = testing::bits(code, r.reduced.n);
      if (!is_feasible(r.reduced, xb)) continue;
      CHECK(eval_objective(r.reduced, xb) == doctest::Approx(eval_objective(inst, lift(r, xb))).epsilon(1e-12));
    }
  }
}
