#include "vnsclust/battery.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <limits>
#include <mutex>
#include <thread>

#include "vnsclust/keyvalue.hpp"

namespace vnsclust {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

template <typename T>
T pick(const std::optional<T>& override_value, const std::optional<T>& shared_value,
       T fallback) {
  if (override_value) return *override_value;
  if (shared_value) return *shared_value;
  return fallback;
}

struct EffectiveParams {
  index_t sample_size = 0;  // 0 = unset
  int p_max = 3;
  double time_limit_s = 1.5;
  std::int64_t max_iterations = 0;
  LloydParams lloyd;
};

EffectiveParams effective_params(const ExperimentSpec& spec, const std::string& algorithm) {
  AlgorithmParams none;
  const AlgorithmParams* over = &none;
  if (const auto it = spec.overrides.find(algorithm); it != spec.overrides.end()) {
    over = &it->second;
  }
  EffectiveParams out;
  out.sample_size = pick(over->sample_size, spec.shared.sample_size, index_t{0});
  out.p_max = pick(over->p_max, spec.shared.p_max, 3);
  out.time_limit_s = pick(over->time_limit_s, spec.shared.time_limit_s, 1.5);
  out.max_iterations = pick(over->max_iterations, spec.shared.max_iterations, std::int64_t{0});
  out.lloyd.max_iters = pick(over->lloyd_max_iters, spec.shared.lloyd_max_iters, 300);
  out.lloyd.rel_tol = pick(over->lloyd_rel_tol, spec.shared.lloyd_rel_tol, 1e-4);
  out.lloyd.candidates = pick(over->candidates, spec.shared.candidates, 3);
  return out;
}

void assign_param(AlgorithmParams& params, const std::string& key, const std::string& value,
                  const std::string& ctx) {
  if (key == "sample_size") {
    params.sample_size = parse_int(value, ctx);
  } else if (key == "p_max") {
    params.p_max = static_cast<int>(parse_int(value, ctx));
  } else if (key == "time_limit") {
    params.time_limit_s = parse_double(value, ctx);
  } else if (key == "max_iterations") {
    params.max_iterations = parse_int(value, ctx);
  } else if (key == "lloyd_max_iters") {
    params.lloyd_max_iters = static_cast<int>(parse_int(value, ctx));
  } else if (key == "lloyd_rel_tol") {
    params.lloyd_rel_tol = parse_double(value, ctx);
  } else if (key == "candidates") {
    params.candidates = static_cast<int>(parse_int(value, ctx));
  } else {
    throw DataError(ctx + ": unknown key '" + key + "'");
  }
}

const std::vector<std::string> kKnownAlgorithms = {"bigvns", "bigmeans", "kmeans"};

struct RunPlan {
  std::size_t dataset_index = 0;
  int k = 0;
  std::string algorithm;
  int replicate = 0;
  std::uint64_t seed = 0;
};

RunRecord execute_run(const ExperimentSpec& spec, const DatasetSpec& dataset,
                      const DataMatrix& data, const RunPlan& plan, double f_star_or_nan) {
  RunRecord record;
  record.dataset = dataset.name;
  record.k = plan.k;
  record.algorithm = plan.algorithm;
  record.seed = plan.seed;
  const EffectiveParams eff = effective_params(spec, plan.algorithm);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    double objective = 0.0;
    if (plan.algorithm == "kmeans") {
      objective = kmeans_full(data, plan.k, eff.lloyd, plan.seed).objective;
    } else {
      BigVnsParams params;
      params.k = plan.k;
      params.sample_size = eff.sample_size;
      if (params.sample_size < 1) {
        throw UsageError("sample_size must be set for sampling algorithms");
      }
      params.p_max = std::min(eff.p_max, plan.k);  // keep small-k cells runnable
      params.time_limit_s = eff.time_limit_s;
      params.max_iterations = eff.max_iterations;
      params.lloyd = eff.lloyd;
      params.seed = plan.seed;
      params.baseline_mode = plan.algorithm == "bigmeans";
      objective = big_vns_clust(data, params).objective;
    }
    record.objective = objective;
    if (f_star_or_nan > 0.0) record.epsilon = relative_error(objective, f_star_or_nan);
  } catch (const Error& e) {
    record.failed = true;
    record.objective = std::numeric_limits<double>::quiet_NaN();
    record.error = e.what();
  }
  record.time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

}  // namespace

std::uint64_t derive_run_seed(std::uint64_t base_seed, const std::string& dataset, int k,
                              const std::string& algorithm, int replicate) {
  std::uint64_t h = splitmix64(base_seed);
  h = mix(h, fnv1a(dataset));
  h = mix(h, static_cast<std::uint64_t>(k));
  h = mix(h, fnv1a(algorithm));
  h = mix(h, static_cast<std::uint64_t>(replicate));
  return h;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  const KeyValueFile kv = load_key_value_file(path);
  const std::filesystem::path base_dir = std::filesystem::path(path).parent_path();
  ExperimentSpec spec;

  spec.base_seed =
      static_cast<std::uint64_t>(parse_int(kv.get("base_seed", "0"), path + ": base_seed"));
  spec.n_exec = static_cast<int>(parse_int(kv.get("n_exec", "15"), path + ": n_exec"));
  spec.fstar_restarts = static_cast<int>(
      parse_int(kv.get("fstar_restarts", "8"), path + ": fstar_restarts"));
  spec.csv_skip_header =
      parse_int(kv.get("csv_skip_header", "0"), path + ": csv_skip_header") != 0;

  if (kv.has("k_values")) {
    spec.k_values.clear();
    for (const auto& tok : split_tokens(kv.get("k_values", ""))) {
      spec.k_values.push_back(static_cast<int>(parse_int(tok, path + ": k_values")));
    }
  }
  if (kv.has("algorithms")) {
    spec.algorithms = split_tokens(kv.get("algorithms", ""));
  }

  for (const std::string& line : kv.all("dataset")) {
    const auto tokens = split_tokens(line);
    if (tokens.size() < 3 || tokens.size() > 4) {
      throw DataError(path + ": dataset needs '<name> <csv|mixture> <path> [dim]'");
    }
    DatasetSpec ds;
    ds.name = tokens[0];
    if (tokens[1] == "csv") {
      ds.synthetic = false;
    } else if (tokens[1] == "mixture") {
      ds.synthetic = true;
    } else {
      throw DataError(path + ": dataset kind must be 'csv' or 'mixture'");
    }
    ds.path = (base_dir / tokens[2]).string();
    if (tokens.size() == 4) {
      ds.expected_dim = static_cast<int>(parse_int(tokens[3], path + ": dataset dim"));
    }
    spec.datasets.push_back(std::move(ds));
  }

  for (const std::string& line : kv.all("fstar")) {
    const auto tokens = split_tokens(line);
    if (tokens.size() != 3) throw DataError(path + ": fstar needs '<dataset> <k> <value>'");
    bool found = false;
    for (auto& ds : spec.datasets) {
      if (ds.name == tokens[0]) {
        ds.f_star[static_cast<int>(parse_int(tokens[1], path + ": fstar k"))] =
            parse_double(tokens[2], path + ": fstar value");
        found = true;
      }
    }
    if (!found) throw DataError(path + ": fstar refers to unknown dataset " + tokens[0]);
  }

  for (const auto& [key, value] : kv.entries) {
    static const std::vector<std::string> handled = {
        "base_seed", "n_exec",  "fstar_restarts", "csv_skip_header",
        "k_values",  "algorithms", "dataset",     "fstar"};
    if (std::find(handled.begin(), handled.end(), key) != handled.end()) continue;
    const auto dot = key.find('.');
    if (dot == std::string::npos) {
      assign_param(spec.shared, key, value, path + ": " + key);
    } else {
      const std::string algo = key.substr(0, dot);
      if (std::find(kKnownAlgorithms.begin(), kKnownAlgorithms.end(), algo) ==
          kKnownAlgorithms.end()) {
        throw DataError(path + ": unknown algorithm prefix '" + algo + "'");
      }
      assign_param(spec.overrides[algo], key.substr(dot + 1), value, path + ": " + key);
    }
  }
  return spec;
}

std::vector<RunRecord> run_battery(const ExperimentSpec& spec, int jobs,
                                   const BatteryHooks& hooks) {
  if (spec.datasets.empty()) throw UsageError("battery needs at least one dataset");
  if (spec.algorithms.empty()) throw UsageError("battery needs at least one algorithm");
  if (spec.k_values.empty()) throw UsageError("battery needs at least one k");
  if (spec.n_exec < 1) throw UsageError("n_exec must be >= 1");
  if (jobs < 1) throw UsageError("jobs must be >= 1");
  for (const auto& algo : spec.algorithms) {
    if (std::find(kKnownAlgorithms.begin(), kKnownAlgorithms.end(), algo) ==
        kKnownAlgorithms.end()) {
      throw UsageError("unknown algorithm: " + algo);
    }
  }
  for (const int k : spec.k_values) {
    if (k < 1) throw UsageError("k values must be >= 1");
  }

  // load every dataset once; runs share them read-only
  std::vector<DataMatrix> data;
  data.reserve(spec.datasets.size());
  for (const auto& ds : spec.datasets) {
    if (ds.synthetic) {
      const MixtureSpec mixture = load_mixture_spec(ds.path);
      data.push_back(generate_gaussian_mixture(mixture, mixture.seed));
    } else {
      CsvOptions options;
      options.skip_header = spec.csv_skip_header;
      data.push_back(load_csv(ds.path, options));
    }
    if (ds.expected_dim > 0 && data.back().cols() != ds.expected_dim) {
      throw DataError("dataset " + ds.name + " has dimension " +
                      std::to_string(data.back().cols()) + ", expected " +
                      std::to_string(ds.expected_dim));
    }
  }

  // best-known objectives: provided values win, otherwise calibrate by
  // multistart full-data runs with seeds derived from the base seed
  std::vector<std::map<int, double>> f_star(spec.datasets.size());
  for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
    const auto& ds = spec.datasets[d];
    const EffectiveParams eff = effective_params(spec, "kmeans");
    for (const int k : spec.k_values) {
      FStarEntry entry{ds.name, k, 0.0, "provided"};
      if (const auto it = ds.f_star.find(k); it != ds.f_star.end()) {
        entry.value = it->second;
      } else if (spec.fstar_restarts > 0 && k <= data[d].rows()) {
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < spec.fstar_restarts; ++r) {
          const std::uint64_t seed = derive_run_seed(spec.base_seed, ds.name, k, "fstar", r);
          best = std::min(best, kmeans_full(data[d], k, eff.lloyd, seed).objective);
        }
        entry.value = best;
        entry.source = "local-multistart";
      } else {
        continue;
      }
      f_star[d][k] = entry.value;
      if (hooks.on_f_star) hooks.on_f_star(entry);
    }
  }

  std::vector<RunPlan> plans;
  for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
    for (const int k : spec.k_values) {
      for (const auto& algo : spec.algorithms) {
        for (int rep = 0; rep < spec.n_exec; ++rep) {
          plans.push_back({d, k, algo, rep,
                           derive_run_seed(spec.base_seed, spec.datasets[d].name, k, algo, rep)});
        }
      }
    }
  }

  std::vector<RunRecord> records(plans.size());
  std::mutex hook_mutex;
  const auto run_one = [&](std::size_t i) {
    const RunPlan& plan = plans[i];
    const auto& ds = spec.datasets[plan.dataset_index];
    double fs = 0.0;
    if (const auto it = f_star[plan.dataset_index].find(plan.k);
        it != f_star[plan.dataset_index].end()) {
      fs = it->second;
    }
    records[i] = execute_run(spec, ds, data[plan.dataset_index], plan, fs);
    if (hooks.on_record) {
      const std::lock_guard<std::mutex> lock(hook_mutex);
      hooks.on_record(records[i]);
    }
  };

  if (jobs == 1) {
    for (std::size_t i = 0; i < plans.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int worker_count = std::min<int>(jobs, static_cast<int>(plans.size()));
    workers.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= plans.size()) return;
          run_one(i);
        }
      });
    }
    for (auto& t : workers) t.join();
  }
  return records;
}

}  // namespace vnsclust
