#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "pdsample/model.hpp"
#include "pdsample/rng.hpp"

namespace testing {

using namespace pdsample;

inline SparseMatrix sparse(const DenseMatrix& m) {
  std::vector<Triplet> t;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) t.emplace_back(static_cast<int>(i), static_cast<int>(j), m(i, j));
  return sparse_from_triplets(m.rows(), m.cols(), t);
}

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (const double x : v) out[i++] = x;
  return out;
}

inline Vector bits(std::uint64_t code, Index n) {
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = static_cast<double>((code >> i) & 1u);
  return x;
}

// Plain lexicographic enumeration with dense arithmetic; deliberately shares
// nothing with the Gray-code oracle.
struct NaiveOptimum {
  std::optional<double> z;
  std::uint64_t feasible = 0;
};

inline NaiveOptimum naive_optimum(const BipInstance& inst) {
  const DenseMatrix q = DenseMatrix(inst.Q);
  const DenseMatrix a = DenseMatrix(inst.A);
  const DenseMatrix b = DenseMatrix(inst.B);
  NaiveOptimum out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << inst.n); ++code) {
    const Vector x = bits(code, inst.n);
    bool ok = true;
    if (a.rows() > 0) ok = ((a * x - inst.b).array() >= -1e-9).all();
    if (ok && b.rows() > 0) ok = ((b * x - inst.d).cwiseAbs().array() <= 1e-9).all();
    if (!ok) continue;
    ++out.feasible;
    const double z = x.dot(q * x) + inst.c.dot(x) + inst.c0;
    if (!out.z || z < *out.z) out.z = z;
  }
  return out;
}

inline Vector uniform_vector(Index n, RngStream& rng, double lo = 0.0, double hi = 1.0) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.uniform_real(lo, hi);
  return v;
}

inline DenseMatrix uniform_matrix(Index r, Index c, RngStream& rng, double lo = -1.0, double hi = 1.0) {
  DenseMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = rng.uniform_real(lo, hi);
  return m;
}

// Random integral instance with inequality and equality rows and a symmetric Q.
inline BipInstance random_instance(Index n, Index m1, Index m2, RngStream& rng, bool quadratic = true) {
  BipInstance inst = empty_instance(n);
  for (Index i = 0; i < n; ++i) inst.c[i] = static_cast<double>(rng.uniform_int(-5, 5));
  if (quadratic) {
    DenseMatrix q = DenseMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j)
        if (rng.next_double() < 0.4) q(i, j) = q(j, i) = static_cast<double>(rng.uniform_int(-3, 3));
    inst.Q = sparse(q);
  }
  const auto random_rows = [&](Index rows) {
    DenseMatrix m = DenseMatrix::Zero(rows, n);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < n; ++j)
        if (rng.next_double() < 0.5) m(i, j) = static_cast<double>(rng.uniform_int(-2, 3));
    return m;
  };
  const DenseMatrix a = random_rows(m1);
  const DenseMatrix b = random_rows(m2);
  // Right-hand sides make a random binary point feasible.
  Vector witness(n);
  for (Index i = 0; i < n; ++i) witness[i] = static_cast<double>(rng.uniform_int(0, 1));
  inst.A = sparse(a);
  inst.b = a * witness - Vector::Constant(m1, static_cast<double>(rng.uniform_int(0, 1)));
  inst.B = sparse(b);
  inst.d = b * witness;
  return inst;
}

}  // namespace testing
