#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vnsclust/errors.hpp"

namespace vnsclust {

// One clustering run inside a battery.
struct RunRecord {
  std::string dataset;
  int k = 0;
  std::string algorithm;
  std::uint64_t seed = 0;
  double objective = 0.0;
  std::optional<double> epsilon;  // percent above the best known objective
  double time_s = 0.0;
  bool failed = false;
  std::string error;
};

// Per (dataset, algorithm) summary: min/median/max of epsilon and runtime,
// first taken over replicates within each k, then averaged across k.
struct AggregateRow {
  std::string dataset;
  std::string algorithm;
  int succ = 0;
  int total = 0;
  std::optional<double> eps_min;
  std::optional<double> eps_median;
  std::optional<double> eps_max;
  double t_min = 0.0;
  double t_median = 0.0;
  double t_max = 0.0;
};

enum class TableFormat { csv, text };

// 100 * (f - f_star) / f_star; negative when f beats the reference.
// Throws UsageError unless f_star > 0.
double relative_error(double f, double f_star);

// Median with the even-count convention (mean of the two central values).
double median(std::vector<double> values);

// Summarizes records into one row per (dataset, algorithm) pair. Every pair
// must have at least one successful record for every k in k_values, otherwise
// AggregationError lists the missing cells. Permuting the records never
// changes the result.
std::vector<AggregateRow> aggregate(std::span<const RunRecord> records,
                                    std::span<const int> k_values);

// For each k, the algorithm counts a success when its median epsilon is no
// worse than every other algorithm's median at that (dataset, k); ties count.
// Returns {successes, |k_values|}.
std::pair<int, int> count_succ(std::span<const RunRecord> records, const std::string& dataset,
                               const std::string& algorithm, std::span<const int> k_values);

// CSV or aligned-text rendering of aggregate rows. The per-dataset best value
// of each metric is starred in text; in CSV a trailing `best` column lists
// the metrics the row wins.
std::string emit_table(std::span<const AggregateRow> rows, TableFormat format);

// Run record persistence (schema versioned by the leading comment line).
std::string run_records_to_csv(std::span<const RunRecord> records);
std::string run_record_csv_header();
std::string run_record_to_csv_line(const RunRecord& record);
std::vector<RunRecord> run_records_from_csv(const std::string& text);

}  // namespace vnsclust
