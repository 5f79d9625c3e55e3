#include "vnsclust/big_vns.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

namespace vnsclust {

namespace {

constexpr int kMaxSampleRetries = 16;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Repairs any degenerate slots against fresh samples; at most
// kMaxSampleRetries samples are tried before giving up.
void repair_degenerate_slots(const DataMatrix& data, CentroidSet& centroids, index_t sample_size,
                             const LloydParams& params, Rng& rng) {
  for (int attempt = 0; attempt < kMaxSampleRetries; ++attempt) {
    if (centroids.degenerate_count() == 0) return;
    const SampleIndexSet sample = draw_sample(data.rows(), sample_size, rng);
    const DataView view = sample.view(data);
    try {
      for (int j = 0; j < centroids.size(); ++j) {
        if (!centroids.is_degenerate(j)) continue;
        centroids.set_point(j, kmeanspp_next_center(view, centroids, params, rng));
      }
    } catch (const DegenerateSampleError&) {
      continue;  // keep whatever was placed, try the remaining slots on a new sample
    }
  }
  if (centroids.degenerate_count() != 0) {
    throw ClusteringFailureError("could not repair degenerate centroid slots");
  }
}

ClusteringResult finalize(const DataMatrix& data, CentroidSet centroids, index_t sample_size,
                          const LloydParams& params, Rng& rng, std::int64_t iterations,
                          std::vector<IterationRecord> trace, Clock::time_point t0) {
  repair_degenerate_slots(data, centroids, sample_size, params, rng);
  AssignResult full = assign_points(data, centroids);
  ClusteringResult out{std::move(centroids), std::move(full.labels), full.objective, iterations,
                       0.0, std::move(trace)};
  out.elapsed_s = seconds_since(t0);
  return out;
}

}  // namespace

CentroidSet shake_centroids(const CentroidSet& centroids, int p, const DataView& sample,
                            const LloydParams& params, Rng& rng, int* changed_slots) {
  const int k = centroids.size();
  if (p < 0 || p > k) throw UsageError("shake strength must satisfy 0 <= p <= k");
  if (sample.dim() != centroids.dim()) {
    throw UsageError("sample and centroid dimensions differ");
  }

  CentroidSet work = centroids;
  std::vector<int> degenerate;
  std::vector<int> alive;
  for (int j = 0; j < k; ++j) {
    (work.is_degenerate(j) ? degenerate : alive).push_back(j);
  }

  // pick p of the currently usable slots to re-draw (fewer if not enough exist)
  const int p_eff = std::min<int>(p, static_cast<int>(alive.size()));
  for (int i = 0; i < p_eff; ++i) {
    std::uniform_int_distribution<int> pick(i, static_cast<int>(alive.size()) - 1);
    std::swap(alive[static_cast<std::size_t>(i)], alive[static_cast<std::size_t>(pick(rng))]);
  }
  std::vector<int> selected(alive.begin(), alive.begin() + p_eff);
  std::sort(selected.begin(), selected.end());
  for (const int j : selected) work.set_degenerate(j);

  // degenerate slots first, then the selected ones; every draw sees all slots
  // fixed so far, including slots re-drawn earlier in this call
  std::vector<int> order = degenerate;
  order.insert(order.end(), selected.begin(), selected.end());
  for (const int j : order) {
    work.set_point(j, kmeanspp_next_center(sample, work, params, rng));
  }
  if (changed_slots) *changed_slots = static_cast<int>(order.size());
  return work;
}

ClusteringResult big_vns_clust(const DataMatrix& data, const BigVnsParams& params) {
  const index_t m = data.rows();
  if (params.k < 1) throw UsageError("k must be >= 1");
  if (params.sample_size < 1 || params.sample_size > m) {
    throw UsageError("sample size must satisfy 1 <= s <= m");
  }
  if (params.k > params.sample_size) throw UsageError("k must not exceed the sample size");
  if (params.p_max < 1 || params.p_max > params.k) {
    throw UsageError("p_max must satisfy 1 <= p_max <= k");
  }
  if (params.time_limit_s <= 0.0) throw UsageError("time limit must be positive");
  if (params.max_iterations < 0) throw UsageError("max_iterations must be >= 0");

  Rng rng(params.seed);
  const auto t0 = Clock::now();

  CentroidSet incumbent(params.k, data.cols());  // all slots start degenerate
  double best_sample_objective = std::numeric_limits<double>::infinity();
  int p = 1;
  std::int64_t iterations = 0;
  std::vector<IterationRecord> trace;

  while (seconds_since(t0) < params.time_limit_s &&
         (params.max_iterations == 0 || iterations < params.max_iterations)) {
    const int scheduled_p = params.baseline_mode ? 0 : p;
    const int degenerate_before = incumbent.degenerate_count();

    // a sample where every point coincides with a kept centroid is useless
    // for re-seeding; retry a few times with fresh samples before giving up
    SampleIndexSet sample;
    CentroidSet shaken(params.k, data.cols());
    int changed = 0;
    bool shaken_ok = false;
    for (int attempt = 0; attempt < kMaxSampleRetries && !shaken_ok; ++attempt) {
      sample = draw_sample(m, params.sample_size, rng);
      try {
        shaken =
            shake_centroids(incumbent, scheduled_p, sample.view(data), params.lloyd, rng, &changed);
        shaken_ok = true;
      } catch (const DegenerateSampleError&) {
      }
    }
    if (!shaken_ok) {
      throw ClusteringFailureError("persistent degenerate samples while shaking");
    }

    const LloydOutcome descent = lloyd(sample.view(data), shaken, params.lloyd);
    const bool accepted = descent.objective < best_sample_objective;
    if (accepted) {
      incumbent = descent.centroids;
      best_sample_objective = descent.objective;
    }
    trace.push_back({descent.objective, accepted, scheduled_p, changed, degenerate_before});

    if (!params.baseline_mode) p = p == params.p_max ? 1 : p + 1;
    ++iterations;
  }

  // The incumbent's centroids are means of whichever sample won the loop, so
  // they carry that sample's estimation noise. One bounded descent over the
  // full dataset settles them onto full-data cluster means before reporting.
  // The descent runs to assignment stability (or the configured iteration
  // cap), so every start inside one basin settles on the same fixed point.
  if (incumbent.degenerate_count() < params.k) {
    LloydParams polish = params.lloyd;
    polish.rel_tol = std::min(polish.rel_tol, 1e-15);
    LloydOutcome polished = lloyd(DataView(data), incumbent, polish);
    incumbent = std::move(polished.centroids);
  }

  return finalize(data, std::move(incumbent), params.sample_size, params.lloyd, rng, iterations,
                  std::move(trace), t0);
}

ClusteringResult kmeans_full(const DataMatrix& data, int k, const LloydParams& params,
                             std::uint64_t seed) {
  if (k < 1) throw UsageError("k must be >= 1");
  if (k > data.rows()) throw UsageError("k must not exceed the number of points");
  Rng rng(seed);
  const auto t0 = Clock::now();
  const DataView view(data);
  CentroidSet init = kmeanspp_seed(view, k, params, rng);
  LloydOutcome descent = lloyd(view, init, params);
  return finalize(data, std::move(descent.centroids), data.rows(), params, rng,
                  descent.iterations, {}, t0);
}

ClusteringResult kmeans_full(const DataMatrix& data, const CentroidSet& init,
                             const LloydParams& params, std::uint64_t seed) {
  if (init.dim() != data.cols()) throw UsageError("init centroid dimension mismatch");
  Rng rng(seed);
  const auto t0 = Clock::now();
  LloydOutcome descent = lloyd(DataView(data), init, params);
  return finalize(data, std::move(descent.centroids), data.rows(), params, rng,
                  descent.iterations, {}, t0);
}

}  // namespace vnsclust
