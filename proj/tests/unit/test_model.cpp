#include <doctest.h>

#include <Eigen/SVD>

#include "pdsample/model.hpp"
#include "support.hpp"

using namespace pdsample;
using testing::sparse;
using testing::vec;

namespace {

BipInstance with_rows(const DenseMatrix& a, const Vector& b, const DenseMatrix& bm, const Vector& d) {
  BipInstance inst = empty_instance(a.cols() ? a.cols() : bm.cols());
  inst.A = sparse(a);
  inst.b = b;
  inst.B = sparse(bm);
  inst.d = d;
  return inst;
}

}  // namespace

TEST_CASE("saddle form negates and stacks constraints") {
  DenseMatrix a(1, 1);
  a << 1;
  SaddleForm sf = build_saddle_form(with_rows(a, vec({0.5}), DenseMatrix(0, 1), Vector(0)));
  CHECK(DenseMatrix(sf.K)(0, 0) == -1.0);
  CHECK(sf.r[0] == 0.5);
  CHECK(sf.m1 == 1);

  DenseMatrix bm(1, 2);
  bm << 1, 1;
  sf = build_saddle_form(with_rows(DenseMatrix(0, 2), Vector(0), bm, vec({1})));
  CHECK(DenseMatrix(sf.K) == -bm);
  CHECK(sf.r[0] == 1.0);
  CHECK(sf.m2 == 1);

  CHECK(build_saddle_form(empty_instance(3)).K.rows() == 0);
}

TEST_CASE("preprocess steps") {
  BipInstance inst = empty_instance(2);
  DenseMatrix a(1, 2);
  a << -3, -4;  // K = [[3, 4]]
  inst.A = sparse(a);
  inst.b = vec({-5});  // r = (-5)
  const SaddleForm sf = preprocess(build_saddle_form(inst));
  CHECK(DenseMatrix(sf.K)(0, 0) == doctest::Approx(0.6));
  CHECK(DenseMatrix(sf.K)(0, 1) == doctest::Approx(0.8));
  CHECK(sf.r[0] == doctest::Approx(-1.0));
  CHECK(sf.scaling.row_scales[0] == doctest::Approx(5.0));

  BipInstance lin = empty_instance(2);
  lin.c = vec({2, 0});
  const SaddleForm s2 = preprocess(build_saddle_form(lin));
  CHECK(s2.c == vec({1, 0}));
  CHECK(s2.scaling.obj_scale == 2.0);
  CHECK(s2.scaling.k_scale == 1.0);
  CHECK(s2.K.rows() == 0);

  const SaddleForm zero = preprocess(build_saddle_form(empty_instance(2)));
  CHECK(zero.scaling.obj_scale == 1.0);
}

TEST_CASE("preprocess leaves zero rows alone") {
  BipInstance inst = empty_instance(2);
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a(1, 0) = 2;
  inst.A = sparse(a);
  inst.b = vec({0, 1});
  const SaddleForm sf = preprocess(build_saddle_form(inst));
  CHECK(sf.scaling.row_scales[0] == 1.0);
  CHECK(sf.K.row(0).nonZeros() == 0);
}

TEST_CASE("preprocess yields unit spectral norm and preserves the problem") {
  RngStream rng{21, 0, 0};
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.next_below(9));
    const BipInstance inst = testing::random_instance(n, 1 + static_cast<Index>(rng.next_below(4)),
                                                      static_cast<Index>(rng.next_below(3)), rng);
    const SaddleForm raw = build_saddle_form(inst);
    const SaddleForm sf = preprocess(raw);
    const double norm = Eigen::JacobiSVD<DenseMatrix>(DenseMatrix(sf.K)).singularValues()[0];
    CHECK(std::abs(norm - 1.0) <= 1e-6);
    if (n > 8) continue;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
      const Vector x = testing::bits(code, n);
      const double orig = eval_objective(inst, x) - inst.c0;
      const double scaled = x.dot(spmv(sf.Q, x)) + sf.c.dot(x);
      CHECK(scaled == doctest::Approx(orig / sf.scaling.obj_scale).epsilon(1e-12));
      const Vector kr_raw = spmv(raw.K, x) + raw.r;
      const Vector kr = spmv(sf.K, x) + sf.r;
      for (Index i = 0; i < sf.m(); ++i) {
        const bool ok_raw = i < sf.m1 ? kr_raw[i] <= 0.0 : kr_raw[i] == 0.0;
        const bool ok = i < sf.m1 ? kr[i] <= 1e-12 : std::abs(kr[i]) <= 1e-12;
        CHECK(ok_raw == ok);
      }
    }
  }
}

TEST_CASE("objective and feasibility") {
  BipInstance inst = empty_instance(2);
  inst.c = vec({2, 1});
  CHECK(eval_objective(inst, vec({1, 1})) == 3.0);
  CHECK(eval_objective(inst, vec({0, 0})) == 0.0);
  CHECK_THROWS_AS(eval_objective(inst, vec({0.5, 1})), InputError);

  BipInstance qp = empty_instance(2);
  DenseMatrix q(2, 2);
  q << 0, 1, 1, 0;
  qp.Q = sparse(q);
  CHECK(eval_objective(qp, vec({1, 1})) == 2.0);

  BipInstance cov = empty_instance(2);
  cov.A = sparse(DenseMatrix::Ones(1, 2));
  cov.b = vec({1});
  CHECK(feasibility_violation(cov, vec({1, 0})).ineq == 0.0);
  CHECK(feasibility_violation(cov, vec({0, 0})).ineq == 1.0);
  CHECK(!is_feasible(cov, vec({0, 0})));

  BipInstance eq = empty_instance(2);
  eq.B = sparse(DenseMatrix::Ones(1, 2));
  eq.d = vec({1});
  CHECK(feasibility_violation(eq, vec({1, 1})).eq == 1.0);
}

TEST_CASE("validation") {
  BipInstance inst = empty_instance(2);
  inst.b = vec({1});
  CHECK_THROWS_AS(validate(inst), DimensionError);

  BipInstance asym = empty_instance(2);
  DenseMatrix q = DenseMatrix::Zero(2, 2);
  q(0, 1) = 1;
  asym.Q = sparse(q);
  CHECK_THROWS_AS(validate(asym), InputError);

  BipInstance nan = empty_instance(1);
  nan.c[0] = std::nan("");
  CHECK_THROWS_AS(validate(nan), InputError);

  BipInstance tu = empty_instance(2);
  tu.meta.tu_rows = {0};
  tu.meta.tu_cols = {0};
  CHECK_THROWS_AS(validate(tu), InputError);
}
