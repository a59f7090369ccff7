#include "pdsample/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pdsample {

SparseMatrix sparse_from_triplets(Index rows, Index cols, const std::vector<Triplet>& entries) {
  SparseMatrix m(rows, cols);
  for (const auto& t : entries) {
    if (t.row() < 0 || t.row() >= rows || t.col() < 0 || t.col() >= cols)
      throw DimensionError("sparse_from_triplets: entry out of range");
  }
  m.setFromTriplets(entries.begin(), entries.end());
  m.prune(0.0, 0.0);
  m.makeCompressed();
  return m;
}

SparseMatrix sparse_from_csr(Index rows, Index cols, std::span<const int> row_ptr,
                             std::span<const int> col_idx, std::span<const double> vals) {
  if (rows < 0 || cols < 0) throw DimensionError("csr: negative shape");
  if (static_cast<Index>(row_ptr.size()) != rows + 1) throw DimensionError("csr: row_ptr length must be rows+1");
  if (col_idx.size() != vals.size()) throw DimensionError("csr: col_idx and vals lengths differ");
  if (row_ptr[0] != 0 || row_ptr[rows] != static_cast<int>(vals.size()))
    throw DimensionError("csr: row_ptr must start at 0 and end at nnz");
  std::vector<Triplet> entries;
  entries.reserve(vals.size());
  for (Index r = 0; r < rows; ++r) {
    if (row_ptr[r + 1] < row_ptr[r]) throw DimensionError("csr: row_ptr must be nondecreasing");
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      if (col_idx[k] < 0 || col_idx[k] >= cols) throw DimensionError("csr: column index out of range");
      if (k > row_ptr[r] && col_idx[k] <= col_idx[k - 1])
        throw DimensionError("csr: column indices must be strictly increasing within a row");
      if (!std::isfinite(vals[k])) throw InputError("csr: non-finite value");
      if (vals[k] == 0.0) throw InputError("csr: explicit zero stored");
      entries.emplace_back(static_cast<int>(r), col_idx[k], vals[k]);
    }
  }
  return sparse_from_triplets(rows, cols, entries);
}

bool is_valid_csr(const SparseMatrix& m) {
  if (!m.isCompressed()) return false;
  const int* rp = m.outerIndexPtr();
  const int* ci = m.innerIndexPtr();
  const double* v = m.valuePtr();
  if (rp[0] != 0 || rp[m.rows()] != m.nonZeros()) return false;
  for (Index r = 0; r < m.rows(); ++r) {
    if (rp[r + 1] < rp[r]) return false;
    for (int k = rp[r]; k < rp[r + 1]; ++k) {
      if (ci[k] < 0 || ci[k] >= m.cols()) return false;
      if (k > rp[r] && ci[k] <= ci[k - 1]) return false;
      if (v[k] == 0.0 || !std::isfinite(v[k])) return false;
    }
  }
  return true;
}

double spectral_norm(const SparseMatrix& m, double tol, int max_iter) {
  if (m.nonZeros() == 0 || m.cols() == 0) return 0.0;
  const double peak = Eigen::Map<const Vector>(m.valuePtr(), m.nonZeros()).cwiseAbs().maxCoeff();
  if (peak == 0.0) return 0.0;
  if (peak > 1e100 || peak < 1e-100) return peak * spectral_norm(SparseMatrix(m / peak), tol, max_iter);
  if (std::min(m.rows(), m.cols()) <= kDenseSpectralLimit) {
    const DenseMatrix g = m.rows() <= m.cols() ? DenseMatrix(m * m.transpose()) : DenseMatrix(m.transpose() * m);
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(eig.eigenvalues().maxCoeff(), 0.0));
  }
  Vector v = Vector::Ones(m.cols()) / std::sqrt(static_cast<double>(m.cols()));
  double sigma = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const Vector u = spmv(m, v);
    const double next = u.norm();
    Vector w = spmv_transpose(m, u);
    const double wn = w.norm();
    if (wn == 0.0) {
      v.setZero();
      v[m.innerIndexPtr()[0]] = 1.0;
      sigma = std::max(sigma, next);
      continue;
    }
    v = w / wn;
    const bool converged = it > 0 && std::abs(next - sigma) < tol * next;
    sigma = next;
    if (converged) break;
  }
  return std::max(sigma, spmv(m, v).norm());
}

Vector row_norms(const SparseMatrix& m) {
  SparseMatrix c = m;
  c.makeCompressed();
  Vector out(m.rows());
  for (Index r = 0; r < m.rows(); ++r) {
    const Index begin = c.outerIndexPtr()[r];
    out[r] = Eigen::Map<const Vector>(c.valuePtr() + begin, c.outerIndexPtr()[r + 1] - begin).stableNorm();
  }
  return out;
}

SparseMatrix select(const SparseMatrix& m, std::span<const Index> rows, std::span<const Index> cols) {
  std::vector<Index> col_map(m.cols(), -1);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= m.cols()) throw DimensionError("select: column out of range");
    col_map[cols[j]] = static_cast<Index>(j);
  }
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= m.rows()) throw DimensionError("select: row out of range");
    for (SparseMatrix::InnerIterator it(m, rows[i]); it; ++it) {
      const Index j = col_map[it.col()];
      if (j >= 0) entries.emplace_back(static_cast<int>(i), static_cast<int>(j), it.value());
    }
  }
  return sparse_from_triplets(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()), entries);
}

SparseMatrix vstack(const SparseMatrix& top, const SparseMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw DimensionError("vstack: column counts differ");
  std::vector<Triplet> entries;
  entries.reserve(top.nonZeros() + bottom.nonZeros());
  for (Index r = 0; r < top.rows(); ++r)
    for (SparseMatrix::InnerIterator it(top, r); it; ++it)
      entries.emplace_back(static_cast<int>(r), static_cast<int>(it.col()), it.value());
  for (Index r = 0; r < bottom.rows(); ++r)
    for (SparseMatrix::InnerIterator it(bottom, r); it; ++it)
      entries.emplace_back(static_cast<int>(top.rows() + r), static_cast<int>(it.col()), it.value());
  return sparse_from_triplets(top.rows() + bottom.rows(), top.cols(), entries);
}

bool is_integral(const SparseMatrix& m) {
  return std::all_of(m.valuePtr(), m.valuePtr() + m.nonZeros(),
                     [](double v) { return std::nearbyint(v) == v; });
}

bool is_integral(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::nearbyint(x) == x; });
}

LuFactors lu_factor(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("lu_factor: matrix must be square");
  if (m.rows() == 0) return LuFactors(Eigen::PartialPivLU<DenseMatrix>(DenseMatrix(0, 0)));
  Eigen::PartialPivLU<DenseMatrix> lu(m);
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  const auto& packed = lu.matrixLU();
  for (Index i = 0; i < packed.rows(); ++i) {
    const double pivot = packed(i, i);
    if (!std::isfinite(pivot) || std::abs(pivot) <= kSingularPivotTol * scale)
      throw SingularMatrixError("lu_factor: matrix is singular to working precision");
  }
  return LuFactors(std::move(lu));
}

Vector lu_solve(const LuFactors& f, const Vector& v) {
  if (v.size() != f.size()) throw DimensionError("lu_solve: vector length does not match factor size");
  if (f.size() == 0) return Vector(0);
  return f.factorization().solve(v);
}

Vector lu_solve_transpose(const LuFactors& f, const Vector& v) {
  if (v.size() != f.size()) throw DimensionError("lu_solve_transpose: vector length does not match factor size");
  if (f.size() == 0) return Vector(0);
  return f.factorization().transpose().solve(v);
}

}  // namespace pdsample
