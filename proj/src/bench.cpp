#include "pdsample/bench.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "pdsample/generators.hpp"
#include "pdsample/instance_io.hpp"

namespace pdsample {

int nnz_group(std::int64_t nnz) {
  if (nnz <= 1) return 0;
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(nnz))) - 1;
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<BenchGroup> aggregate(const std::vector<BenchRow>& rows) {
  std::map<int, std::vector<const BenchRow*>> by_group;
  for (const auto& row : rows)
    if (row.warning.empty()) by_group[nnz_group(row.nnz)].push_back(&row);

  std::vector<BenchGroup> out;
  for (const auto& [key, members] : by_group) {
    BenchGroup g;
    g.log2_nnz = key;
    g.count = static_cast<std::int64_t>(members.size());
    std::vector<double> times;
    for (const BenchRow* r : members)
      if (r->solved && r->time_to_best) times.push_back(*r->time_to_best);
    g.solved_percent = 100.0 * static_cast<double>(times.size()) / static_cast<double>(g.count);
    if (!times.empty()) {
      std::sort(times.begin(), times.end());
      g.q1 = quantile(times, 0.25);
      g.median = quantile(times, 0.5);
      g.q3 = quantile(times, 0.75);
    }
    out.push_back(g);
  }
  return out;
}

BenchReport bench(const std::filesystem::path& dir, const SolveConfig& cfg) {
  if (!std::filesystem::is_directory(dir)) throw InputError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  BenchReport report;
  for (const auto& file : files) {
    BenchRow row;
    row.file = file.filename().string();
    try {
      const BipInstance inst = read_instance(file);
      row.problem_class = inst.meta.problem_class;
      row.nnz = inst.meta.nnz.value_or(model_nnz(inst));
      const SolveResult res = solve(inst, cfg);
      row.solved = res.incumbent.has_value();
      if (row.solved) {
        row.z_best = res.incumbent.z_best;
        row.time_to_best = res.incumbent.found_at_seconds;
      }
    } catch (const std::exception& e) {
      row.warning = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  report.groups = aggregate(report.rows);
  return report;
}

namespace {

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::string csv_opt(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream s;
  s.precision(17);
  s << *v;
  return s.str();
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

nlohmann::json to_json(const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json j{{"file", r.file},     {"class", r.problem_class},   {"nnz", r.nnz},
                     {"solved", r.solved}, {"z_best", opt(r.z_best)},    {"time_to_best", opt(r.time_to_best)}};
    if (!r.warning.empty()) j["warning"] = r.warning;
    rows.push_back(j);
  }
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : report.groups)
    groups.push_back({{"log2_nnz", g.log2_nnz},
                      {"count", g.count},
                      {"solved_percent", g.solved_percent},
                      {"median", opt(g.median)},
                      {"q1", opt(g.q1)},
                      {"q3", opt(g.q3)}});
  return {{"rows", rows}, {"groups", groups}};
}

std::string rows_csv(const BenchReport& report) {
  std::ostringstream s;
  s << "file,class,nnz,solved,z_best,time_to_best,warning\n";
  for (const auto& r : report.rows)
    s << csv_text(r.file) << ',' << csv_text(r.problem_class) << ',' << r.nnz << ',' << (r.solved ? 1 : 0) << ','
      << csv_opt(r.z_best) << ',' << csv_opt(r.time_to_best) << ',' << csv_text(r.warning) << '\n';
  return s.str();
}

std::string groups_csv(const BenchReport& report) {
  std::ostringstream s;
  s << "log2_nnz,count,solved_percent,median,q1,q3\n";
  for (const auto& g : report.groups)
    s << g.log2_nnz << ',' << g.count << ',' << g.solved_percent << ',' << csv_opt(g.median) << ','
      << csv_opt(g.q1) << ',' << csv_opt(g.q3) << '\n';
  return s.str();
}

void write_report(const BenchReport& report, const std::filesystem::path& stem) {
  const auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path.string() + " for writing");
    out << text;
  };
  std::filesystem::path base = stem;
  write(base.replace_extension(".csv"), rows_csv(report));
  base = stem;
  write(base.replace_extension(".groups.csv"), groups_csv(report));
  base = stem;
  write(base.replace_extension(".json"), to_json(report).dump(2) + "\n");
}

}  // namespace pdsample
