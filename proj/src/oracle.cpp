#include "pdsample/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace pdsample {

namespace {

using ColMajor = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

struct Column {
  std::vector<std::pair<Index, double>> entries;
};

std::vector<Column> columns(const SparseMatrix& m) {
  const ColMajor cm(m);
  std::vector<Column> out(cm.cols());
  for (Index j = 0; j < cm.outerSize(); ++j)
    for (ColMajor::InnerIterator it(cm, j); it; ++it) out[j].entries.emplace_back(it.row(), it.value());
  return out;
}

std::int64_t as_int(double v) { return static_cast<std::int64_t>(std::llround(v)); }

// Running A x, B x and objective for the current Gray-code point, in either
// exact integer or floating arithmetic.
template <typename T>
struct Running {
  std::vector<T> ax, bx, qx;
  std::vector<T> b, d, c, qdiag;
  T obj{};

  bool feasible() const {
    for (std::size_t r = 0; r < ax.size(); ++r)
      if (ax[r] < b[r]) return false;
    for (std::size_t r = 0; r < bx.size(); ++r)
      if (bx[r] != d[r]) return false;
    return true;
  }
};

template <typename T>
T convert(double v) {
  if constexpr (std::is_same_v<T, std::int64_t>) return as_int(v);
  else return v;
}

template <typename T>
std::vector<T> convert_all(const Vector& v) {
  std::vector<T> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = convert<T>(v[i]);
  return out;
}

}  // namespace

OracleResult brute_force(const BipInstance& inst) {
  validate(inst);
  const Index n = inst.n;
  if (n > kOracleMaxVars) throw InputError("oracle: instance has more than 24 variables");

  const bool int_cons = constraints_integral(inst);
  const bool int_obj = objective_integral(inst);
  const auto acols = columns(inst.A);
  const auto bcols = columns(inst.B);
  const auto qcols = columns(inst.Q);

  Running<std::int64_t> ci;
  Running<double> cf;
  if (int_cons) {
    ci.ax.assign(inst.A.rows(), 0);
    ci.bx.assign(inst.B.rows(), 0);
    ci.b = convert_all<std::int64_t>(inst.b);
    ci.d = convert_all<std::int64_t>(inst.d);
  } else {
    cf.ax.assign(inst.A.rows(), 0.0);
    cf.bx.assign(inst.B.rows(), 0.0);
  }
  if (int_obj) {
    ci.qx.assign(n, 0);
    ci.c = convert_all<std::int64_t>(inst.c);
    ci.qdiag = convert_all<std::int64_t>(Vector(inst.Q.diagonal()));
    ci.obj = as_int(inst.c0);
  } else {
    cf.qx.assign(n, 0.0);
    cf.c = std::vector<double>(inst.c.data(), inst.c.data() + n);
    const Vector diag = inst.Q.diagonal();
    cf.qdiag = std::vector<double>(diag.data(), diag.data() + n);
    cf.obj = inst.c0;
  }

  const auto near_feasible = [&](const Vector& x) {
    if (int_cons) return ci.feasible();
    // Floating constraints: screen with the running values, confirm exactly.
    for (std::size_t r = 0; r < cf.ax.size(); ++r)
      if (cf.ax[r] < inst.b[r] - 1e-6) return false;
    for (std::size_t r = 0; r < cf.bx.size(); ++r)
      if (std::abs(cf.bx[r] - inst.d[r]) > 1e-6) return false;
    return is_feasible(inst, x);
  };

  OracleResult res;
  Vector x = Vector::Zero(n);
  std::uint64_t best_code = 0;
  double best = std::numeric_limits<double>::infinity();
  std::int64_t best_int = std::numeric_limits<std::int64_t>::max();

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 0; step < total; ++step) {
    const std::uint64_t code = step ^ (step >> 1);
    if (step > 0) {
      const Index i = std::countr_zero(step);
      const double delta = x[i] == 0.0 ? 1.0 : -1.0;
      x[i] += delta;
      if (int_cons) {
        const auto di = static_cast<std::int64_t>(delta);
        for (const auto& [r, v] : acols[i].entries) ci.ax[r] += di * as_int(v);
        for (const auto& [r, v] : bcols[i].entries) ci.bx[r] += di * as_int(v);
      } else {
        for (const auto& [r, v] : acols[i].entries) cf.ax[r] += delta * v;
        for (const auto& [r, v] : bcols[i].entries) cf.bx[r] += delta * v;
      }
      if (int_obj) {
        const auto di = static_cast<std::int64_t>(delta);
        ci.obj += di * (2 * ci.qx[i] + ci.c[i]) + ci.qdiag[i];
        for (const auto& [r, v] : qcols[i].entries) ci.qx[r] += di * as_int(v);
      } else {
        cf.obj += delta * (2.0 * cf.qx[i] + cf.c[i]) + cf.qdiag[i];
        for (const auto& [r, v] : qcols[i].entries) cf.qx[r] += delta * v;
      }
    }
    ++res.enumerated;
    if (!near_feasible(x)) continue;
    ++res.feasible_count;

    bool better = false;
    if (int_obj) {
      better = ci.obj < best_int || (ci.obj == best_int && code < best_code);
      if (better) best_int = ci.obj;
    } else {
      const double slack = 1e-9 * std::max(1.0, std::abs(best));
      if (cf.obj <= best + slack) {
        const double z = eval_objective(inst, x);
        better = z < best || (z == best && code < best_code);
        if (better) best = z;
      }
    }
    if (better) {
      best_code = code;
      res.x_opt = x;
      res.feasible = true;
    }
  }
  if (res.feasible) res.z_opt = int_obj ? static_cast<double>(best_int) : eval_objective(inst, res.x_opt);
  return res;
}

}  // namespace pdsample
