#include <doctest.h>

#include <cmath>

#include "pdsample/bounds.hpp"
#include "support.hpp"

using namespace pdsample;
using testing::sparse;
using testing::vec;

TEST_CASE("optimality bound") {
  CHECK(psi_bound({1.0, 1.0, 1.0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(psi_bound({0.1, 1.0, 1.0, 1}) == doctest::Approx(1 - std::exp(1 - std::log(10.0) - 0.1)));
  CHECK(psi_bound({0.1, 1.0, 1.0, 1}) == doctest::Approx(0.754).epsilon(1e-3));
  CHECK(psi_bound({0.0, 1.0, 1.0, 1}) == 1.0);
  CHECK_THROWS_AS(psi_bound({2.0, 1.0, 1.0, 1}), InputError);
  CHECK_THROWS_AS(psi_bound({0.1, 0.0, 1.0, 1}), InputError);
}

TEST_CASE("feasibility bound") {
  CHECK(phi_bound({0.0, 1.0, 3, 5}) == 0.0);
  CHECK(phi_bound({1.0, 1.0, 1, 1}) == doctest::Approx(1 - std::exp(-2.0)));
  CHECK(phi_bound({1.0, 1.0, 1, 1000}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(phi_bound({1.0, 0.0, 1, 1}), InputError);
  CHECK_THROWS_AS(phi_bound({1.0, 1.0, 0, 1}), InputError);
}

TEST_CASE("bounds are monotone and inside the unit interval") {
  RngStream rng{4, 0, 0};
  for (int trial = 0; trial < 2000; ++trial) {
    const double t = rng.uniform_real(0.01, 5);
    const double mu = rng.uniform_real(0.001, t);
    const double mu2 = rng.uniform_real(mu, t);
    const std::int64_t k = 1 + static_cast<std::int64_t>(rng.next_below(50));
    const double a = psi_bound({mu, t, 1.0, k});
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(psi_bound({mu, t, 1.0, k + 1}) >= a);
    CHECK(psi_bound({mu2, t, 1.0, k}) <= a + 1e-15);

    const double g = rng.uniform_real(0, 3);
    const double eta = rng.uniform_real(0.1, 3);
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng.next_below(20));
    const double f = phi_bound({g, eta, m, k});
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(phi_bound({g, eta, m, k + 1}) >= f);
    CHECK(phi_bound({g + 0.1, eta, m, k}) >= f);
  }
}

TEST_CASE("bound inputs from marginals") {
  BipInstance inst = empty_instance(2);
  inst.c = vec({3, -5});
  inst.A = sparse(DenseMatrix::Ones(1, 2));
  inst.b = vec({1});
  const Vector xs = vec({1, 0});
  const BoundInputs bi = bound_inputs_from_state(vec({1, 1}), inst, &xs, 0.5, 8);
  CHECK(bi.feas.gamma_plus == 1.0);
  CHECK(bi.feas.eta == doctest::Approx(std::sqrt(2.0)));
  CHECK(bi.feas.m == 1);
  REQUIRE(bi.opt.has_value());
  CHECK(bi.opt->lipschitz == 5.0);
  CHECK(bi.opt->mu == 1.0);
  CHECK_FALSE(bi.equality_rows_ignored);

  CHECK(expected_l1_distance(xs, xs) == 0.0);
  CHECK(expected_l1_distance(vec({0.5, 0.5}), xs) == 1.0);
  CHECK_FALSE(bound_inputs_from_state(vec({0.5, 0.5}), inst, nullptr, 1, 1).opt.has_value());

  BipInstance q = inst;
  DenseMatrix qm(2, 2);
  qm << 1, -2, -2, 0;
  q.Q = sparse(qm);
  CHECK(objective_lipschitz(q) == 5.0 + 2 * 3.0);

  BipInstance eq = inst;
  eq.B = sparse(DenseMatrix::Ones(1, 2));
  eq.d = vec({1});
  CHECK(bound_inputs_from_state(vec({0.5, 0.5}), eq, nullptr, 1, 1).equality_rows_ignored);
}
