#include "vnsclust/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "vnsclust/keyvalue.hpp"

namespace vnsclust {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

struct CellStats {
  std::optional<double> eps_min, eps_median, eps_max;
  double t_min = 0.0, t_median = 0.0, t_max = 0.0;
};

// collect the usable records of one (dataset, algorithm, k) cell
std::vector<const RunRecord*> cell_records(std::span<const RunRecord> records,
                                           const std::string& dataset,
                                           const std::string& algorithm, int k) {
  std::vector<const RunRecord*> out;
  for (const auto& r : records) {
    if (!r.failed && r.dataset == dataset && r.algorithm == algorithm && r.k == k) {
      out.push_back(&r);
    }
  }
  return out;
}

CellStats cell_stats(const std::vector<const RunRecord*>& cell) {
  CellStats out;
  std::vector<double> times;
  std::vector<double> eps;
  bool eps_complete = true;
  for (const RunRecord* r : cell) {
    times.push_back(r->time_s);
    if (r->epsilon) {
      eps.push_back(*r->epsilon);
    } else {
      eps_complete = false;
    }
  }
  out.t_min = *std::min_element(times.begin(), times.end());
  out.t_max = *std::max_element(times.begin(), times.end());
  out.t_median = median(times);
  if (eps_complete && !eps.empty()) {
    out.eps_min = *std::min_element(eps.begin(), eps.end());
    out.eps_max = *std::max_element(eps.begin(), eps.end());
    out.eps_median = median(eps);
  }
  return out;
}

std::optional<double> mean_of(const std::vector<std::optional<double>>& values) {
  double acc = 0.0;
  for (const auto& v : values) {
    if (!v) return std::nullopt;
    acc += *v;
  }
  return acc / static_cast<double>(values.size());
}

}  // namespace

double relative_error(double f, double f_star) {
  if (!(f_star > 0.0)) throw UsageError("relative_error needs f_star > 0");
  return 100.0 * (f - f_star) / f_star;
}

double median(std::vector<double> values) {
  if (values.empty()) throw UsageError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::vector<AggregateRow> aggregate(std::span<const RunRecord> records,
                                    std::span<const int> k_values) {
  if (k_values.empty()) throw UsageError("aggregate needs at least one k");

  // (dataset, algorithm) pairs in a canonical order so permuting the record
  // list cannot change the output
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.dataset, r.algorithm);
    if (std::find(pairs.begin(), pairs.end(), key) == pairs.end()) pairs.push_back(key);
  }
  std::sort(pairs.begin(), pairs.end());

  std::vector<std::string> missing;
  std::vector<AggregateRow> rows;
  for (const auto& [dataset, algorithm] : pairs) {
    std::vector<std::optional<double>> eps_min, eps_median, eps_max;
    std::vector<double> t_min, t_median, t_max;
    for (const int k : k_values) {
      const auto cell = cell_records(records, dataset, algorithm, k);
      if (cell.empty()) {
        missing.push_back(dataset + "/" + algorithm + "/k=" + std::to_string(k));
        continue;
      }
      const CellStats stats = cell_stats(cell);
      eps_min.push_back(stats.eps_min);
      eps_median.push_back(stats.eps_median);
      eps_max.push_back(stats.eps_max);
      t_min.push_back(stats.t_min);
      t_median.push_back(stats.t_median);
      t_max.push_back(stats.t_max);
    }
    if (t_min.size() != k_values.size()) continue;  // missing cells already noted

    AggregateRow row;
    row.dataset = dataset;
    row.algorithm = algorithm;
    const auto [succ, total] = count_succ(records, dataset, algorithm, k_values);
    row.succ = succ;
    row.total = total;
    row.eps_min = mean_of(eps_min);
    row.eps_median = mean_of(eps_median);
    row.eps_max = mean_of(eps_max);
    const auto mean = [](const std::vector<double>& v) {
      double acc = 0.0;
      for (double x : v) acc += x;
      return acc / static_cast<double>(v.size());
    };
    row.t_min = mean(t_min);
    row.t_median = mean(t_median);
    row.t_max = mean(t_max);
    rows.push_back(std::move(row));
  }
  if (!missing.empty()) {
    std::string what = "aggregate is missing cells:";
    for (const auto& cell : missing) what += " " + cell;
    throw AggregationError(what);
  }
  return rows;
}

std::pair<int, int> count_succ(std::span<const RunRecord> records, const std::string& dataset,
                               const std::string& algorithm, std::span<const int> k_values) {
  if (k_values.empty()) throw UsageError("count_succ needs at least one k");

  std::vector<std::string> algorithms;
  for (const auto& r : records) {
    if (r.dataset != dataset) continue;
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
      algorithms.push_back(r.algorithm);
    }
  }
  std::sort(algorithms.begin(), algorithms.end());

  int succ = 0;
  for (const int k : k_values) {
    // medians are compared on epsilon when every algorithm has it at this
    // (dataset, k); otherwise on the raw objective, which orders identically
    // whenever a shared reference exists
    bool use_eps = true;
    for (const auto& algo : algorithms) {
      for (const RunRecord* r : cell_records(records, dataset, algo, k)) {
        if (!r->epsilon) use_eps = false;
      }
    }
    double best = std::numeric_limits<double>::infinity();
    double own = std::numeric_limits<double>::infinity();
    bool own_seen = false;
    for (const auto& algo : algorithms) {
      const auto cell = cell_records(records, dataset, algo, k);
      if (cell.empty()) continue;
      std::vector<double> values;
      for (const RunRecord* r : cell) values.push_back(use_eps ? *r->epsilon : r->objective);
      const double med = median(values);
      best = std::min(best, med);
      if (algo == algorithm) {
        own = med;
        own_seen = true;
      }
    }
    if (own_seen && own <= best) ++succ;
  }
  return {succ, static_cast<int>(k_values.size())};
}

namespace {

// indices of rows holding the best value of each metric within one dataset
struct BestMarks {
  // metric order: succ, eps_min, eps_median, eps_max, t_min, t_median, t_max
  static constexpr int kMetrics = 7;
  std::vector<std::array<bool, kMetrics>> marks;
};

constexpr const char* kMetricNames[] = {"succ",  "eps_min", "eps_median", "eps_max",
                                        "t_min", "t_median", "t_max"};

BestMarks best_marks(std::span<const AggregateRow> rows) {
  BestMarks out;
  out.marks.assign(rows.size(), {});
  std::vector<std::string> datasets;
  for (const auto& row : rows) {
    if (std::find(datasets.begin(), datasets.end(), row.dataset) == datasets.end()) {
      datasets.push_back(row.dataset);
    }
  }
  for (const auto& dataset : datasets) {
    std::vector<std::size_t> group;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].dataset == dataset) group.push_back(i);
    }
    const auto mark_min = [&](int metric, auto getter) {
      std::optional<double> best;
      for (const std::size_t i : group) {
        const auto v = getter(rows[i]);
        if (v && (!best || *v < *best)) best = *v;
      }
      if (!best) return;
      for (const std::size_t i : group) {
        const auto v = getter(rows[i]);
        if (v && *v == *best) out.marks[i][static_cast<std::size_t>(metric)] = true;
      }
    };
    // highest success count wins; every other metric is smaller-is-better
    int best_succ = -1;
    for (const std::size_t i : group) best_succ = std::max(best_succ, rows[i].succ);
    for (const std::size_t i : group) {
      if (rows[i].succ == best_succ) out.marks[i][0] = true;
    }
    mark_min(1, [](const AggregateRow& r) { return r.eps_min; });
    mark_min(2, [](const AggregateRow& r) { return r.eps_median; });
    mark_min(3, [](const AggregateRow& r) { return r.eps_max; });
    mark_min(4, [](const AggregateRow& r) { return std::optional<double>(r.t_min); });
    mark_min(5, [](const AggregateRow& r) { return std::optional<double>(r.t_median); });
    mark_min(6, [](const AggregateRow& r) { return std::optional<double>(r.t_max); });
  }
  return out;
}

std::string opt17(const std::optional<double>& v) { return v ? fmt17(*v) : std::string{}; }

}  // namespace

std::string emit_table(std::span<const AggregateRow> rows, TableFormat format) {
  const BestMarks marks = best_marks(rows);
  std::ostringstream out;
  if (format == TableFormat::csv) {
    out << "# vnsclust-aggregate v1\n";
    out << "dataset,algorithm,succ,total,eps_min,eps_median,eps_max,t_min,t_median,t_max,best\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out << r.dataset << ',' << r.algorithm << ',' << r.succ << ',' << r.total << ','
          << opt17(r.eps_min) << ',' << opt17(r.eps_median) << ',' << opt17(r.eps_max) << ','
          << fmt17(r.t_min) << ',' << fmt17(r.t_median) << ',' << fmt17(r.t_max) << ',';
      bool first = true;
      for (int m = 0; m < BestMarks::kMetrics; ++m) {
        if (!marks.marks[i][static_cast<std::size_t>(m)]) continue;
        if (!first) out << ';';
        out << kMetricNames[m];
        first = false;
      }
      out << '\n';
    }
    return out.str();
  }

  // aligned text
  std::vector<std::array<std::string, 10>> cells;
  cells.push_back({"dataset", "algorithm", "#succ", "eps_min", "eps_median", "eps_max", "t_min",
                   "t_median", "t_max", ""});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto starred = [&](int metric, const std::optional<double>& v) {
      if (!v) return std::string{"-"};
      std::string s = fmt_short(*v);
      if (marks.marks[i][static_cast<std::size_t>(metric)]) s = "*" + s;
      return s;
    };
    std::array<std::string, 10> row;
    row[0] = r.dataset;
    row[1] = r.algorithm;
    row[2] = (marks.marks[i][0] ? "*" : "") + std::to_string(r.succ) + "/" +
             std::to_string(r.total);
    row[3] = starred(1, r.eps_min);
    row[4] = starred(2, r.eps_median);
    row[5] = starred(3, r.eps_max);
    row[6] = starred(4, r.t_min);
    row[7] = starred(5, r.t_median);
    row[8] = starred(6, r.t_max);
    row[9] = "";
    cells.push_back(std::move(row));
  }
  std::array<std::size_t, 10> width{};
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : cells) {
    for (std::size_t c = 0; c + 1 < row.size(); ++c) {
      out << row[c];
      out << std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string run_record_csv_header() {
  return "# vnsclust-runrecords v1\ndataset,k,algorithm,seed,objective,epsilon,time_s\n";
}

std::string run_record_to_csv_line(const RunRecord& r) {
  std::ostringstream out;
  out << r.dataset << ',' << r.k << ',' << r.algorithm << ',' << r.seed << ','
      << (r.failed ? "nan" : fmt17(r.objective)) << ','
      << (r.epsilon ? fmt17(*r.epsilon) : std::string{}) << ',' << fmt17(r.time_s) << '\n';
  return out.str();
}

std::string run_records_to_csv(std::span<const RunRecord> records) {
  std::string out = run_record_csv_header();
  for (const auto& r : records) out += run_record_to_csv_line(r);
  return out;
}

std::vector<RunRecord> run_records_from_csv(const std::string& text) {
  std::vector<RunRecord> out;
  std::istringstream stream(text);
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t sep = line.find(',', start);
      fields.push_back(sep == std::string::npos ? line.substr(start)
                                                : line.substr(start, sep - start));
      if (sep == std::string::npos) break;
      start = sep + 1;
    }
    if (fields.size() != 7) {
      throw DataError("run record line " + std::to_string(line_no) + ": expected 7 fields");
    }
    RunRecord r;
    const std::string ctx = "run record line " + std::to_string(line_no);
    r.dataset = fields[0];
    r.k = static_cast<int>(parse_int(fields[1], ctx));
    r.algorithm = fields[2];
    r.seed = static_cast<std::uint64_t>(parse_int(fields[3], ctx));
    if (fields[4] == "nan") {
      r.failed = true;
      r.objective = std::numeric_limits<double>::quiet_NaN();
    } else {
      r.objective = parse_double(fields[4], ctx);
    }
    if (!fields[5].empty()) r.epsilon = parse_double(fields[5], ctx);
    r.time_s = parse_double(fields[6], ctx);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace vnsclust
