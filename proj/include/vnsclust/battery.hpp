#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vnsclust/big_vns.hpp"
#include "vnsclust/csv.hpp"
#include "vnsclust/metrics.hpp"
#include "vnsclust/synthetic.hpp"

namespace vnsclust {

struct DatasetSpec {
  std::string name;
  std::string path;        // CSV file, or mixture spec file when synthetic
  bool synthetic = false;
  int expected_dim = 0;    // 0 = unchecked
  std::map<int, double> f_star;  // best known objective per k, optional
};

// Per-algorithm knobs; anything left unset falls back to the shared defaults.
struct AlgorithmParams {
  std::optional<index_t> sample_size;
  std::optional<int> p_max;
  std::optional<double> time_limit_s;
  std::optional<std::int64_t> max_iterations;
  std::optional<int> lloyd_max_iters;
  std::optional<double> lloyd_rel_tol;
  std::optional<int> candidates;
};

struct ExperimentSpec {
  std::vector<DatasetSpec> datasets;
  std::vector<int> k_values{2, 3, 5, 10, 15, 20, 25};
  int n_exec = 15;  // replicates per (dataset, k, algorithm)
  std::vector<std::string> algorithms;  // subset of {bigvns, bigmeans, kmeans}
  AlgorithmParams shared;
  std::map<std::string, AlgorithmParams> overrides;
  std::uint64_t base_seed = 0;
  int fstar_restarts = 8;     // multistart runs used to calibrate missing f*, 0 = skip
  bool csv_skip_header = false;
};

// Derived, calibrated best-known objective.
struct FStarEntry {
  std::string dataset;
  int k = 0;
  double value = 0.0;
  std::string source;  // "provided" or "local-multistart"
};

ExperimentSpec load_experiment_spec(const std::string& path);

// Stable per-run seed from the battery coordinates; distinct coordinates give
// distinct streams for any sane base seed.
std::uint64_t derive_run_seed(std::uint64_t base_seed, const std::string& dataset, int k,
                              const std::string& algorithm, int replicate);

struct BatteryHooks {
  // called after every finished run (serialized), e.g. to append to a CSV
  std::function<void(const RunRecord&)> on_record;
  // called once per calibrated or provided f* value
  std::function<void(const FStarEntry&)> on_f_star;
};

// Runs every (dataset, k, algorithm, replicate) combination. Datasets load
// once and are shared read-only; run failures become failed records and the
// battery keeps going. `jobs` > 1 executes runs concurrently; results are
// identical either way because each run only uses its derived seed.
std::vector<RunRecord> run_battery(const ExperimentSpec& spec, int jobs = 1,
                                   const BatteryHooks& hooks = {});

}  // namespace vnsclust
