#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/SparseCore>

#include <span>
#include <vector>

#include "pdsample/errors.hpp"

namespace pdsample {

using Index = Eigen::Index;

// Compressed sparse row storage. Eigen's row-major compressed layout is CSR:
// outerIndexPtr() = row_ptr, innerIndexPtr() = col_idx, valuePtr() = vals.
template <typename Scalar>
using SparseMatrixT = Eigen::SparseMatrix<Scalar, Eigen::RowMajor, int>;
template <typename Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using DenseMatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using SparseMatrix = SparseMatrixT<double>;
using Vector = VectorT<double>;
using DenseMatrix = DenseMatrixT<double>;
using Triplet = Eigen::Triplet<double, int>;

/// Builds a compressed CSR matrix from (row, col, value) triplets. Duplicates
/// are summed and exact zeros are dropped.
SparseMatrix sparse_from_triplets(Index rows, Index cols, const std::vector<Triplet>& entries);

/// Builds a CSR matrix from raw arrays, validating every structural invariant.
SparseMatrix sparse_from_csr(Index rows, Index cols, std::span<const int> row_ptr,
                             std::span<const int> col_idx, std::span<const double> vals);

/// Checks CSR invariants: compressed, monotone offsets, sorted in-range
/// columns, no stored zeros, finite values.
bool is_valid_csr(const SparseMatrix& m);

/// y = M v, summed row by row in ascending column order.
template <typename Scalar>
VectorT<Scalar> spmv(const SparseMatrixT<Scalar>& m, const VectorT<Scalar>& v) {
  if (v.size() != m.cols()) throw DimensionError("spmv: vector length does not match columns");
  VectorT<Scalar> out(m.rows());
  for (Index r = 0; r < m.outerSize(); ++r) {
    Scalar acc(0);
    for (typename SparseMatrixT<Scalar>::InnerIterator it(m, r); it; ++it) acc += it.value() * v[it.col()];
    out[r] = acc;
  }
  return out;
}

/// y = M^T v by a transposed traversal of the same CSR storage.
template <typename Scalar>
VectorT<Scalar> spmv_transpose(const SparseMatrixT<Scalar>& m, const VectorT<Scalar>& v) {
  if (v.size() != m.rows()) throw DimensionError("spmv_transpose: vector length does not match rows");
  VectorT<Scalar> out = VectorT<Scalar>::Zero(m.cols());
  for (Index r = 0; r < m.outerSize(); ++r) {
    const Scalar vr = v[r];
    if (vr == Scalar(0)) continue;
    for (typename SparseMatrixT<Scalar>::InnerIterator it(m, r); it; ++it) out[it.col()] += it.value() * vr;
  }
  return out;
}

inline constexpr double kSpectralNormTol = 1e-7;
inline constexpr int kSpectralNormMaxIter = 500;

inline constexpr Index kDenseSpectralLimit = 512;

/// Largest singular value. Exact through the smaller Gram matrix when
/// min(rows, cols) <= kDenseSpectralLimit, otherwise power iteration on
/// M^T M started from the normalized all-ones vector. Returns 0 for a matrix
/// with no nonzeros.
double spectral_norm(const SparseMatrix& m, double tol = kSpectralNormTol,
                     int max_iter = kSpectralNormMaxIter);

/// Euclidean norm of each row.
Vector row_norms(const SparseMatrix& m);

/// Extracts the submatrix with the given rows and columns (in the given order).
SparseMatrix select(const SparseMatrix& m, std::span<const Index> rows, std::span<const Index> cols);

/// Stacks `top` over `bottom` (column counts must agree).
SparseMatrix vstack(const SparseMatrix& top, const SparseMatrix& bottom);

bool is_integral(const SparseMatrix& m);
bool is_integral(const Vector& v);

/// Dense LU with partial pivoting.
class LuFactors {
 public:
  LuFactors() = default;
  explicit LuFactors(Eigen::PartialPivLU<DenseMatrix> lu) : lu_(std::move(lu)) {}

  Index size() const { return lu_.rows(); }
  const Eigen::PartialPivLU<DenseMatrix>& factorization() const { return lu_; }

 private:
  Eigen::PartialPivLU<DenseMatrix> lu_;
};

inline constexpr double kSingularPivotTol = 1e-12;

/// Factors a square matrix; throws SingularMatrixError when a pivot is below
/// kSingularPivotTol relative to the largest entry.
LuFactors lu_factor(const DenseMatrix& m);

/// Solves M x = v with precomputed factors.
Vector lu_solve(const LuFactors& f, const Vector& v);

/// Solves M^T x = v with precomputed factors.
Vector lu_solve_transpose(const LuFactors& f, const Vector& v);

}  // namespace pdsample
