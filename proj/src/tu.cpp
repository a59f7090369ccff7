#include "pdsample/tu.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace pdsample {

namespace {

std::vector<Index> complement(const std::vector<Index>& picked, Index size) {
  std::vector<char> mark(size, 0);
  for (const Index v : picked) mark[v] = 1;
  std::vector<Index> out;
  for (Index v = 0; v < size; ++v)
    if (!mark[v]) out.push_back(v);
  return out;
}

void check_unique(const std::vector<Index>& v, Index size, const char* what) {
  std::vector<char> mark(size, 0);
  for (const Index x : v) {
    if (x < 0 || x >= size) throw InputError(std::string("tu: ") + what + " index out of range");
    if (mark[x]) throw InputError(std::string("tu: duplicate ") + what + " index");
    mark[x] = 1;
  }
}

Vector gather(const Vector& v, const std::vector<Index>& idx) {
  Vector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

// Columns of S = -B_JI^{-1} B_JIbar, one LU solve per reduced column.
SparseMatrix build_s(const LuFactors& lu, const SparseMatrix& b_jibar) {
  const Index rows = b_jibar.rows();
  const SparseMatrix cols_major = b_jibar.transpose();  // row r of this = column r of B_JIbar
  std::vector<Triplet> entries;
  for (Index col = 0; col < b_jibar.cols(); ++col) {
    Vector rhs = Vector::Zero(rows);
    bool any = false;
    for (SparseMatrix::InnerIterator it(cols_major, col); it; ++it) {
      rhs[it.col()] = it.value();
      any = true;
    }
    if (!any) continue;
    const Vector sol = lu_solve(lu, rhs);
    for (Index i = 0; i < rows; ++i) {
      const double v = -sol[i];
      const double rounded = std::nearbyint(v);
      if (std::abs(v - rounded) > kLiftTol) throw InputError("tu: B_JI^{-1} B_JIbar is not integral; block is not TU");
      if (rounded != 0.0) entries.emplace_back(static_cast<int>(i), static_cast<int>(col), rounded);
    }
  }
  return sparse_from_triplets(rows, b_jibar.cols(), entries);
}

SparseMatrix pruned(const SparseMatrix& m) {
  SparseMatrix out = m;
  out.prune(0.0, 0.0);
  out.makeCompressed();
  return out;
}

}  // namespace

Vector TuReform::basic_values(const Vector& x_bar) const {
  if (x_bar.size() != static_cast<Index>(Ibar.size())) throw DimensionError("tu: reduced point has wrong length");
  return s + S * x_bar;
}

TuReform tu_reformulate(const BipInstance& inst, std::vector<Index> J, std::vector<Index> I) {
  const auto start = std::chrono::steady_clock::now();
  validate(inst);
  if (J.size() != I.size()) throw InputError("tu: |J| must equal |I|");
  check_unique(J, inst.B.rows(), "row");
  check_unique(I, inst.n, "column");

  TuReform t;
  t.J = std::move(J);
  t.I = std::move(I);
  t.Jbar = complement(t.J, inst.B.rows());
  t.Ibar = complement(t.I, inst.n);
  t.n_original = inst.n;

  std::vector<Index> all_rows(inst.A.rows());
  std::iota(all_rows.begin(), all_rows.end(), 0);

  const SparseMatrix b_j_all = select(inst.B, t.J, complement({}, inst.n));
  const Vector d_j = gather(inst.d, t.J);
  if (!is_integral(b_j_all) || !is_integral(d_j)) throw InputError("tu: B_J and d_J must be integral");

  const SparseMatrix b_ji = select(inst.B, t.J, t.I);
  const SparseMatrix b_jibar = select(inst.B, t.J, t.Ibar);
  t.lu = lu_factor(DenseMatrix(b_ji));
  t.s = lu_solve(t.lu, d_j);
  for (Index i = 0; i < t.s.size(); ++i) {
    const double r = std::nearbyint(t.s[i]);
    if (std::abs(t.s[i] - r) > kLiftTol) throw InputError("tu: B_JI^{-1} d_J is not integral; block is not TU");
    t.s[i] = r;
  }
  t.S = build_s(t.lu, b_jibar);

  const SparseMatrix& S = t.S;
  const Vector& s = t.s;
  const Vector c_i = gather(inst.c, t.I);
  const Vector c_ibar = gather(inst.c, t.Ibar);
  const SparseMatrix q_ii = select(inst.Q, t.I, t.I);
  const SparseMatrix q_iibar = select(inst.Q, t.I, t.Ibar);
  const SparseMatrix q_ibaribar = select(inst.Q, t.Ibar, t.Ibar);

  BipInstance& red = t.reduced;
  red.n = static_cast<Index>(t.Ibar.size());
  red.meta = inst.meta;
  red.meta.tu_rows.clear();
  red.meta.tu_cols.clear();
  red.meta.nnz.reset();

  const SparseMatrix st = S.transpose();
  red.Q = pruned(SparseMatrix(st * q_ii * S) + SparseMatrix(st * q_iibar) +
                            SparseMatrix(SparseMatrix(q_iibar.transpose()) * S) + q_ibaribar);
  const Vector q_ii_s = q_ii * s;
  red.c = 2.0 * (st * q_ii_s) + 2.0 * (q_iibar.transpose() * s) + st * c_i + c_ibar;
  red.c0 = inst.c0 + s.dot(q_ii_s) + c_i.dot(s);

  // Inequalities: original rows, then S x >= -s, then -S x >= s - 1.
  const SparseMatrix a_i = select(inst.A, all_rows, t.I);
  const SparseMatrix a_ibar = select(inst.A, all_rows, t.Ibar);
  SparseMatrix a_red = pruned(SparseMatrix(a_i * S) + a_ibar);
  const Vector b_red = inst.b - a_i * s;
  red.A = vstack(vstack(a_red, S), SparseMatrix(-S));
  red.b.resize(b_red.size() + 2 * s.size());
  red.b << b_red, -s, (s.array() - 1.0).matrix();

  const SparseMatrix b_jbar_i = select(inst.B, t.Jbar, t.I);
  const SparseMatrix b_jbar_ibar = select(inst.B, t.Jbar, t.Ibar);
  red.B = pruned(SparseMatrix(b_jbar_i * S) + b_jbar_ibar);
  red.d = gather(inst.d, t.Jbar) - b_jbar_i * s;

  red.Q.makeCompressed();
  red.A.makeCompressed();
  red.B.makeCompressed();
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

Vector lift_fractional(const TuReform& reform, const Vector& x_bar) {
  const Vector basic = reform.basic_values(x_bar);
  Vector x(reform.n_original);
  for (std::size_t i = 0; i < reform.Ibar.size(); ++i) x[reform.Ibar[i]] = x_bar[i];
  for (std::size_t i = 0; i < reform.I.size(); ++i) x[reform.I[i]] = std::clamp(basic[i], 0.0, 1.0);
  return x;
}

Vector lift(const TuReform& reform, const Vector& x_bar) {
  const Vector basic = reform.basic_values(x_bar);
  for (Index i = 0; i < basic.size(); ++i) {
    if (std::abs(basic[i]) > kLiftTol && std::abs(basic[i] - 1.0) > kLiftTol)
      throw InputError("tu: lifted basic variable is not binary");
  }
  return lift_rounded(reform, x_bar);
}

Vector lift_rounded(const TuReform& reform, const Vector& x_bar) {
  const Vector basic = reform.basic_values(x_bar);
  Vector x(reform.n_original);
  for (std::size_t i = 0; i < reform.Ibar.size(); ++i) x[reform.Ibar[i]] = x_bar[i];
  for (std::size_t i = 0; i < reform.I.size(); ++i) x[reform.I[i]] = basic[i] >= 0.5 ? 1.0 : 0.0;
  return x;
}

namespace {

// Fraction-free Gaussian elimination; exact for integer input.
__int128 bareiss_det(std::vector<__int128> a, int k) {
  __int128 sign = 1;
  __int128 prev = 1;
  for (int p = 0; p < k - 1; ++p) {
    if (a[p * k + p] == 0) {
      int swap = -1;
      for (int r = p + 1; r < k; ++r)
        if (a[r * k + p] != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0;
      for (int c = 0; c < k; ++c) std::swap(a[p * k + c], a[swap * k + c]);
      sign = -sign;
    }
    for (int r = p + 1; r < k; ++r) {
      for (int c = p + 1; c < k; ++c) a[r * k + c] = (a[r * k + c] * a[p * k + p] - a[r * k + p] * a[p * k + c]) / prev;
    }
    prev = a[p * k + p];
  }
  return sign * a[(k - 1) * k + (k - 1)];
}

bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[i] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

}  // namespace

bool verify_tu_small(const Eigen::MatrixXd& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (std::min(rows, cols) > 12)
    throw InputError("verify_tu_small: matrix too large; rely on generator TU metadata instead");
  std::vector<long long> entries(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double v = m(r, c);
      if (std::nearbyint(v) != v) throw InputError("verify_tu_small: matrix must be integral");
      if (std::abs(v) > 1.0) return false;
      entries[static_cast<std::size_t>(r) * cols + c] = static_cast<long long>(v);
    }
  const int limit = std::min(rows, cols);
  for (int k = 2; k <= limit; ++k) {
    std::vector<int> rs(k);
    std::iota(rs.begin(), rs.end(), 0);
    do {
      std::vector<int> cs(k);
      std::iota(cs.begin(), cs.end(), 0);
      do {
        std::vector<__int128> sub(static_cast<std::size_t>(k) * k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub[i * k + j] = entries[static_cast<std::size_t>(rs[i]) * cols + cs[j]];
        const __int128 det = bareiss_det(std::move(sub), k);
        if (det > 1 || det < -1) return false;
      } while (next_combination(cs, cols));
    } while (next_combination(rs, rows));
  }
  return true;
}

}  // namespace pdsample
