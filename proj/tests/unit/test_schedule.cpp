#include <doctest.h>

#include <cmath>

#include "pdsample/schedule.hpp"
#include "pdsample/rng.hpp"

using namespace pdsample;

TEST_CASE("penalty update by hand") {
  const PenaltyParams params{1.0, 3.0, 4.0, 1.0, 0.1};
  PenaltySchedule s(params, 0, 1.0);
  CHECK(s.update() == doctest::Approx(1.1));
  CHECK(s.last_unclipped() == 1.0);

  PenaltySchedule later(params, 4, 1.0);
  CHECK(later.update() == doctest::Approx(2.0));
  PenaltySchedule near_cap(params, 4, 2.95);
  CHECK(near_cap.update() == 3.0);

  PenaltySchedule far(params, 1000, 3.0);
  for (int i = 0; i < 5; ++i) CHECK(far.update() == 3.0);
}

TEST_CASE("default schedule starts at rho_min") {
  PenaltySchedule s;
  CHECK(s.update() == doctest::Approx(1e-3));
  CHECK(s.counter() == 1);
}

TEST_CASE("emitted penalties are nondecreasing and inside the bounds") {
  RngStream rng{99, 0, 0};
  for (int draw = 0; draw < 2000; ++draw) {
    PenaltyParams p;
    p.rho_min = rng.uniform_real(1e-4, 1.0);
    p.rho_max = p.rho_min * rng.uniform_real(1.0, 1e3);
    p.T = rng.uniform_real(1.0, 200.0);
    p.p = rng.uniform_real(0.5, 3.0);
    p.delta = rng.uniform_real(0.0, 0.01);
    PenaltySchedule s(p);
    double prev = 0.0;
    for (int k = 0; k < 50; ++k) {
      const auto n = s.counter();
      const double rho = s.update();
      CHECK(s.last_unclipped() == doctest::Approx(p.rho_min * std::pow(1 + n / p.T, p.p)).epsilon(1e-12));
      CHECK(rho >= prev);
      CHECK(rho >= p.rho_min * (1 - 1e-12));
      CHECK(rho <= p.rho_max);
      prev = rho;
    }
  }
}

TEST_CASE("invalid penalty parameters") {
  CHECK_THROWS_AS(PenaltySchedule(PenaltyParams{2.0, 1.0, 100, 2, 0}), InputError);
  CHECK_THROWS_AS(PenaltySchedule(PenaltyParams{1e-3, 10, 0, 2, 0}), InputError);
  CHECK_THROWS_AS(PenaltySchedule(PenaltyParams{1e-3, 10, 100, 2, -1}), InputError);
}

TEST_CASE("halting rule") {
  const HaltParams params{1e-6, 1e-6, 1e-6, 5, 1e-8};
  SUBCASE("all gaps within tolerance") {
    HaltState h(params);
    for (int i = 0; i < 4; ++i) CHECK_FALSE(h.check(ResidualReport{}, false));
    CHECK(h.check(ResidualReport{}, false));
  }
  SUBCASE("incumbent improvement resets the wait") {
    HaltState h(params);
    for (int i = 0; i < 4; ++i) h.check(ResidualReport{}, false);
    CHECK_FALSE(h.check(ResidualReport{}, true));
    CHECK(h.rounds_since_incumbent_improved() == 0);
  }
  SUBCASE("oscillating binary gap never halts") {
    HaltState h(params);
    for (int i = 0; i < 50; ++i) {
      ResidualReport r;
      r.binary_gap = i % 2 ? 0.1 : 0.2;
      CHECK_FALSE(h.check(r, false));
    }
  }
  SUBCASE("constant gaps halt by stalling") {
    HaltState h(params);
    ResidualReport r{0.3, 0.2, 0.5, 0.1};
    for (int i = 0; i < 4; ++i) CHECK_FALSE(h.check(r, false));
    CHECK(h.check(r, false));
  }
  SUBCASE("identical sequences give identical decisions") {
    HaltState a(params), b(params);
    RngStream rng{1, 0, 0};
    for (int i = 0; i < 100; ++i) {
      ResidualReport r{rng.next_double(), rng.next_double(), 0.0, rng.next_double() < 0.5 ? 0.0 : 1e-3};
      CHECK(a.check(r, false) == b.check(r, false));
    }
  }
}
