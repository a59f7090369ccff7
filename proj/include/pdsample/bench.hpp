#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdsample/solver.hpp"

namespace pdsample {

struct BenchRow {
  std::string file;
  std::string problem_class;
  std::int64_t nnz = 0;
  bool solved = false;
  std::optional<double> z_best;
  std::optional<double> time_to_best;
  std::string warning;  // non-empty when the instance could not be read or solved
};

struct BenchGroup {
  int log2_nnz = 0;
  std::int64_t count = 0;
  double solved_percent = 0.0;
  std::optional<double> median;  // of time_to_best over solved rows
  std::optional<double> q1;
  std::optional<double> q3;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchGroup> groups;
};

/// floor(log2 nnz); 0 for nnz <= 1.
int nnz_group(std::int64_t nnz);

/// Linear-interpolation quantile of a sorted, non-empty sample.
double quantile(const std::vector<double>& sorted, double q);

/// Groups rows by nnz_group, skipping warning rows, in ascending group order.
std::vector<BenchGroup> aggregate(const std::vector<BenchRow>& rows);

/// Solves every *.json instance under `dir` in file-name order.
BenchReport bench(const std::filesystem::path& dir, const SolveConfig& cfg);

nlohmann::json to_json(const BenchReport& report);
std::string rows_csv(const BenchReport& report);
std::string groups_csv(const BenchReport& report);

/// Writes <stem>.csv (rows), <stem>.groups.csv and <stem>.json.
void write_report(const BenchReport& report, const std::filesystem::path& stem);

}  // namespace pdsample
