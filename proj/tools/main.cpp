// vnsclust command line tool: cluster one dataset, generate synthetic data,
// or run benchmark batteries. Exit codes: 0 ok, 1 usage, 2 data, 3 run failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vnsclust/battery.hpp"
#include "vnsclust/big_vns.hpp"
#include "vnsclust/csv.hpp"
#include "vnsclust/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ClusterArgs {
  std::string data_path;
  std::string mixture_path;
  bool skip_header = false;
  std::string algo = "bigvns";
  int k = 0;
  std::int64_t sample_size = 0;
  int p_max = 3;
  double time_limit = 1.5;
  std::int64_t max_iterations = 0;
  std::uint64_t seed = 0;
  int lloyd_max_iters = 300;
  double rel_tol = 1e-4;
  int candidates = 3;
  std::string out_path;
  bool with_trace = false;
};

struct BenchArgs {
  std::string spec_path;
  std::string out_dir;
  int jobs = 1;
};

json centroids_to_json(const vnsclust::CentroidSet& centroids) {
  json out = json::array();
  for (int j = 0; j < centroids.size(); ++j) {
    const auto p = centroids.point(j);
    out.push_back(std::vector<double>(p.begin(), p.end()));
  }
  return out;
}

int run_cluster(const ClusterArgs& args) {
  vnsclust::LloydParams lloyd{args.lloyd_max_iters, args.rel_tol, args.candidates};

  std::optional<vnsclust::DataMatrix> data;
  if (!args.data_path.empty()) {
    vnsclust::CsvOptions options;
    options.skip_header = args.skip_header;
    data = vnsclust::load_csv(args.data_path, options);
  } else {
    const vnsclust::MixtureSpec mixture = vnsclust::load_mixture_spec(args.mixture_path);
    data = vnsclust::generate_gaussian_mixture(mixture, mixture.seed);
  }

  vnsclust::ClusteringResult result = [&] {
    if (args.algo == "kmeans") {
      return vnsclust::kmeans_full(*data, args.k, lloyd, args.seed);
    }
    vnsclust::BigVnsParams params;
    params.k = args.k;
    params.sample_size = args.sample_size;
    params.p_max = std::min(args.p_max, args.k);  // same clamp the battery applies
    params.time_limit_s = args.time_limit;
    params.max_iterations = args.max_iterations;
    params.lloyd = lloyd;
    params.seed = args.seed;
    params.baseline_mode = args.algo == "bigmeans";
    return vnsclust::big_vns_clust(*data, params);
  }();

  std::printf("algorithm   %s\n", args.algo.c_str());
  std::printf("points      %lld x %d\n", static_cast<long long>(data->rows()), data->cols());
  std::printf("k           %d\n", args.k);
  std::printf("objective   %.6f\n", result.objective);
  std::printf("iterations  %lld\n", static_cast<long long>(result.iterations));
  std::printf("elapsed_s   %.3f\n", result.elapsed_s);

  if (!args.out_path.empty()) {
    json out;
    out["algorithm"] = args.algo;
    out["k"] = args.k;
    out["seed"] = args.seed;
    out["objective"] = result.objective;
    out["iterations"] = result.iterations;
    out["elapsed_s"] = result.elapsed_s;
    out["centroids"] = centroids_to_json(result.centroids);
    out["labels"] = result.labels;
    if (args.with_trace) {
      json trace = json::array();
      for (const auto& rec : result.trace) {
        trace.push_back({{"sample_objective", rec.sample_objective},
                         {"accepted", rec.accepted},
                         {"p", rec.shaking_power},
                         {"changed_slots", rec.changed_slots},
                         {"degenerate_before", rec.degenerate_before}});
      }
      out["trace"] = std::move(trace);
    }
    std::ofstream stream(args.out_path);
    if (!stream) throw vnsclust::DataError("cannot write " + args.out_path);
    stream << out.dump(2) << '\n';
  }
  return 0;
}

int run_gen(const std::string& spec_path, std::optional<std::uint64_t> seed,
            const std::string& out_path) {
  const vnsclust::MixtureSpec mixture = vnsclust::load_mixture_spec(spec_path);
  const vnsclust::DataMatrix data =
      vnsclust::generate_gaussian_mixture(mixture, seed.value_or(mixture.seed));
  vnsclust::save_csv(data, out_path);
  std::printf("wrote %lld x %d points to %s\n", static_cast<long long>(data.rows()), data.cols(),
              out_path.c_str());
  return 0;
}

int run_bench(const BenchArgs& args) {
  const vnsclust::ExperimentSpec spec = vnsclust::load_experiment_spec(args.spec_path);
  fs::create_directories(args.out_dir);

  std::ofstream runs(fs::path(args.out_dir) / "runs.csv");
  if (!runs) throw vnsclust::DataError("cannot write runs.csv in " + args.out_dir);
  runs << vnsclust::run_record_csv_header();

  std::ofstream fstar(fs::path(args.out_dir) / "fstar.csv");
  if (!fstar) throw vnsclust::DataError("cannot write fstar.csv in " + args.out_dir);
  fstar << "# vnsclust-fstar v1\ndataset,k,fstar,source\n";

  vnsclust::BatteryHooks hooks;
  hooks.on_record = [&runs](const vnsclust::RunRecord& record) {
    runs << vnsclust::run_record_to_csv_line(record);
    runs.flush();
  };
  hooks.on_f_star = [&fstar](const vnsclust::FStarEntry& entry) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", entry.value);
    fstar << entry.dataset << ',' << entry.k << ',' << buf << ',' << entry.source << '\n';
  };

  const std::vector<vnsclust::RunRecord> records =
      vnsclust::run_battery(spec, args.jobs, hooks);

  int failures = 0;
  for (const auto& r : records) failures += r.failed ? 1 : 0;

  // When whole cells failed there is nothing to aggregate for them; keep the
  // table of the surviving cells if one can be formed, but never let the
  // aggregation guard mask the run failures themselves.
  try {
    const std::vector<vnsclust::AggregateRow> rows =
        vnsclust::aggregate(records, spec.k_values);
    std::ofstream agg(fs::path(args.out_dir) / "aggregate.csv");
    if (!agg) throw vnsclust::DataError("cannot write aggregate.csv in " + args.out_dir);
    agg << vnsclust::emit_table(rows, vnsclust::TableFormat::csv);
    std::cout << vnsclust::emit_table(rows, vnsclust::TableFormat::text);
  } catch (const vnsclust::AggregationError& e) {
    if (failures == 0) throw;
    std::fprintf(stderr, "%s\n", e.what());
  }

  if (failures > 0) {
    std::fprintf(stderr, "%d of %zu runs failed\n", failures, records.size());
    return 3;
  }
  return 0;
}

int run_sweep(const BenchArgs& args, const std::vector<int>& p_max_values) {
  vnsclust::ExperimentSpec spec = vnsclust::load_experiment_spec(args.spec_path);
  spec.algorithms = {"bigvns"};
  fs::create_directories(args.out_dir);

  std::vector<vnsclust::RunRecord> merged;
  for (const int v : p_max_values) {
    vnsclust::ExperimentSpec variant = spec;
    variant.overrides["bigvns"].p_max = v;
    std::vector<vnsclust::RunRecord> records = vnsclust::run_battery(variant, args.jobs);
    for (auto& r : records) {
      r.algorithm = "bigvns_p" + std::to_string(v);
      merged.push_back(std::move(r));
    }
  }

  const std::vector<vnsclust::AggregateRow> per_dataset =
      vnsclust::aggregate(merged, spec.k_values);

  // one overall row per p_max value: stats averaged over datasets, successes summed
  std::vector<vnsclust::AggregateRow> overall;
  for (const int v : p_max_values) {
    const std::string name = "bigvns_p" + std::to_string(v);
    vnsclust::AggregateRow row;
    row.dataset = "overall";
    row.algorithm = name;
    int count = 0;
    double eps_min = 0.0, eps_median = 0.0, eps_max = 0.0;
    bool eps_ok = true;
    for (const auto& r : per_dataset) {
      if (r.algorithm != name) continue;
      ++count;
      row.succ += r.succ;
      row.total += r.total;
      row.t_min += r.t_min;
      row.t_median += r.t_median;
      row.t_max += r.t_max;
      if (r.eps_min && r.eps_median && r.eps_max) {
        eps_min += *r.eps_min;
        eps_median += *r.eps_median;
        eps_max += *r.eps_max;
      } else {
        eps_ok = false;
      }
    }
    if (count == 0) continue;
    row.t_min /= count;
    row.t_median /= count;
    row.t_max /= count;
    if (eps_ok) {
      row.eps_min = eps_min / count;
      row.eps_median = eps_median / count;
      row.eps_max = eps_max / count;
    }
    overall.push_back(std::move(row));
  }

  std::ofstream per_ds(fs::path(args.out_dir) / "sweep_by_dataset.csv");
  per_ds << vnsclust::emit_table(per_dataset, vnsclust::TableFormat::csv);
  std::ofstream ov(fs::path(args.out_dir) / "sweep.csv");
  ov << vnsclust::emit_table(overall, vnsclust::TableFormat::csv);

  std::cout << vnsclust::emit_table(overall, vnsclust::TableFormat::text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MSSC clustering toolkit: sample-based VNS search and benchmarks"};
  app.require_subcommand(1);

  ClusterArgs cluster_args;
  CLI::App* cluster = app.add_subcommand("cluster", "Cluster one dataset");
  auto* data_opt = cluster->add_option("--data", cluster_args.data_path, "CSV dataset");
  auto* synth_opt =
      cluster->add_option("--synthetic", cluster_args.mixture_path, "mixture spec file");
  cluster->add_flag("--skip-header", cluster_args.skip_header, "skip the first CSV line");
  cluster->add_option("--algo", cluster_args.algo, "bigvns | bigmeans | kmeans")
      ->check(CLI::IsMember({"bigvns", "bigmeans", "kmeans"}));
  cluster->add_option("--k", cluster_args.k, "number of clusters")->required();
  cluster->add_option("--sample-size", cluster_args.sample_size, "sample size per iteration");
  cluster->add_option("--p-max", cluster_args.p_max, "strongest shake strength (clamped to k)");
  cluster->add_option("--time-limit", cluster_args.time_limit, "time budget in seconds");
  cluster->add_option("--max-iterations", cluster_args.max_iterations,
                      "optional iteration cap (0 = none)");
  cluster->add_option("--seed", cluster_args.seed, "random seed");
  cluster->add_option("--lloyd-max-iters", cluster_args.lloyd_max_iters, "descent iteration cap");
  cluster->add_option("--rel-tol", cluster_args.rel_tol, "descent relative tolerance");
  cluster->add_option("--candidates", cluster_args.candidates, "greedy seeding candidates");
  cluster->add_option("--out", cluster_args.out_path, "write the result as JSON");
  cluster->add_flag("--trace", cluster_args.with_trace, "include the iteration trace in --out");
  data_opt->excludes(synth_opt);

  std::string gen_spec, gen_out;
  std::optional<std::uint64_t> gen_seed;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic dataset CSV");
  gen->add_option("--spec", gen_spec, "mixture spec file")->required();
  gen->add_option("--seed", gen_seed, "generation seed (default: from the spec)");
  gen->add_option("--out", gen_out, "output CSV path")->required();

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark battery");
  bench->add_option("--spec", bench_args.spec_path, "experiment spec file")->required();
  bench->add_option("--out-dir", bench_args.out_dir, "output directory")->required();
  bench->add_option("--jobs", bench_args.jobs, "concurrent runs");

  BenchArgs sweep_args;
  std::vector<int> p_max_values{2, 3, 4, 5};
  CLI::App* sweep = app.add_subcommand("sweep-pmax", "Compare shake strengths");
  sweep->add_option("--spec", sweep_args.spec_path, "experiment spec file")->required();
  sweep->add_option("--out-dir", sweep_args.out_dir, "output directory")->required();
  sweep->add_option("--jobs", sweep_args.jobs, "concurrent runs");
  sweep->add_option("--p-max-values", p_max_values, "p_max values to compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (cluster->parsed()) {
      if (cluster_args.data_path.empty() == cluster_args.mixture_path.empty()) {
        throw vnsclust::UsageError("cluster needs exactly one of --data or --synthetic");
      }
      if (cluster_args.algo != "kmeans" && cluster_args.sample_size < 1) {
        throw vnsclust::UsageError("--sample-size is required for bigvns and bigmeans");
      }
      return run_cluster(cluster_args);
    }
    if (gen->parsed()) return run_gen(gen_spec, gen_seed, gen_out);
    if (bench->parsed()) return run_bench(bench_args);
    if (sweep->parsed()) return run_sweep(sweep_args, p_max_values);
  } catch (const vnsclust::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const vnsclust::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
