#include "pdsample/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace pdsample {

namespace {

using nlohmann::json;

json matrix_to_json(const SparseMatrix& m) {
  SparseMatrix c = m;
  c.makeCompressed();
  const int nnz = static_cast<int>(c.nonZeros());
  return json{{"rows", c.rows()},
              {"cols", c.cols()},
              {"nnz", nnz},
              {"row_ptr", std::vector<int>(c.outerIndexPtr(), c.outerIndexPtr() + c.rows() + 1)},
              {"col_idx", std::vector<int>(c.innerIndexPtr(), c.innerIndexPtr() + nnz)},
              {"vals", std::vector<double>(c.valuePtr(), c.valuePtr() + nnz)}};
}

json vector_to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.contains(key)) throw InputError(where + ": unknown key '" + key + "'");
}

template <typename T>
T field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(where + ": bad value for '" + key + "': " + e.what());
  }
}

Vector vector_from_json(const json& j, const std::string& key) {
  const auto values = field<std::vector<double>>(j, key, "instance");
  for (const double v : values)
    if (!std::isfinite(v)) throw InputError("instance: non-finite entry in '" + key + "'");
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

SparseMatrix matrix_from_json(const json& j, const std::string& key, Index default_rows, Index cols) {
  if (!j.contains(key)) return SparseMatrix(default_rows, cols);
  const json& m = j.at(key);
  const std::string where = "instance." + key;
  check_keys(m, {"rows", "cols", "nnz", "row_ptr", "col_idx", "vals"}, where);
  const auto rows = field<Index>(m, "rows", where);
  const auto mcols = field<Index>(m, "cols", where);
  const auto row_ptr = field<std::vector<int>>(m, "row_ptr", where);
  const auto col_idx = field<std::vector<int>>(m, "col_idx", where);
  const auto vals = field<std::vector<double>>(m, "vals", where);
  if (m.contains("nnz") && field<std::size_t>(m, "nnz", where) != vals.size())
    throw InputError(where + ": nnz does not match vals");
  try {
    return sparse_from_csr(rows, mcols, row_ptr, col_idx, vals);
  } catch (const DimensionError& e) {
    throw InputError(where + ": " + e.what());
  }
}

}  // namespace

nlohmann::json instance_to_json(const BipInstance& inst) {
  json j;
  j["n"] = inst.n;
  j["c"] = vector_to_json(inst.c);
  j["c0"] = inst.c0;
  if (inst.Q.nonZeros() > 0) j["Q"] = matrix_to_json(inst.Q);
  if (inst.A.rows() > 0) j["A"] = matrix_to_json(inst.A);
  j["b"] = vector_to_json(inst.b);
  if (inst.B.rows() > 0) j["B"] = matrix_to_json(inst.B);
  j["d"] = vector_to_json(inst.d);
  json meta;
  meta["class"] = inst.meta.problem_class;
  meta["seed"] = inst.meta.seed;
  meta["tu_rows"] = inst.meta.tu_rows;
  meta["tu_cols"] = inst.meta.tu_cols;
  meta["sampler"] = inst.meta.sampler;
  if (inst.meta.nnz) meta["nnz"] = *inst.meta.nnz;
  j["meta"] = meta;
  return j;
}

BipInstance instance_from_json(const nlohmann::json& j) {
  check_keys(j, {"n", "c", "c0", "Q", "A", "b", "B", "d", "meta"}, "instance");
  BipInstance inst;
  inst.n = field<Index>(j, "n", "instance");
  if (inst.n < 0) throw InputError("instance: n must be non-negative");
  inst.c = vector_from_json(j, "c");
  inst.c0 = j.contains("c0") ? field<double>(j, "c0", "instance") : 0.0;
  inst.Q = matrix_from_json(j, "Q", inst.n, inst.n);
  inst.A = matrix_from_json(j, "A", 0, inst.n);
  inst.b = j.contains("b") ? vector_from_json(j, "b") : Vector(0);
  inst.B = matrix_from_json(j, "B", 0, inst.n);
  inst.d = j.contains("d") ? vector_from_json(j, "d") : Vector(0);
  if (j.contains("meta")) {
    const json& m = j.at("meta");
    check_keys(m, {"class", "seed", "tu_rows", "tu_cols", "sampler", "nnz"}, "instance.meta");
    if (m.contains("class")) inst.meta.problem_class = field<std::string>(m, "class", "instance.meta");
    if (m.contains("seed")) inst.meta.seed = field<std::uint64_t>(m, "seed", "instance.meta");
    if (m.contains("tu_rows")) inst.meta.tu_rows = field<std::vector<Index>>(m, "tu_rows", "instance.meta");
    if (m.contains("tu_cols")) inst.meta.tu_cols = field<std::vector<Index>>(m, "tu_cols", "instance.meta");
    if (m.contains("sampler")) inst.meta.sampler = field<std::string>(m, "sampler", "instance.meta");
    if (m.contains("nnz")) inst.meta.nnz = field<std::int64_t>(m, "nnz", "instance.meta");
  }
  validate(inst);
  return inst;
}

void write_instance(const BipInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  out << instance_to_json(inst).dump() << '\n';
}

BipInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

bool structurally_equal(const BipInstance& a, const BipInstance& b) {
  const auto same = [](const SparseMatrix& x, const SparseMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.nonZeros() != y.nonZeros()) return false;
    return SparseMatrix(x - y).norm() == 0.0;
  };
  return a.n == b.n && a.c == b.c && a.c0 == b.c0 && same(a.Q, b.Q) && same(a.A, b.A) && a.b == b.b &&
         same(a.B, b.B) && a.d == b.d && a.meta == b.meta;
}

}  // namespace pdsample
