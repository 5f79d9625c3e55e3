#pragma once

#include <cstdint>
#include <vector>

#include "vnsclust/core.hpp"
#include "vnsclust/kmeans.hpp"

namespace vnsclust {

struct BigVnsParams {
  int k = 0;
  index_t sample_size = 0;
  int p_max = 3;             // strongest shake: p cycles through 1..p_max
  double time_limit_s = 0.0;
  LloydParams lloyd{};
  std::uint64_t seed = 0;
  bool baseline_mode = false;       // repair degenerate slots only, never shake
  std::int64_t max_iterations = 0;  // optional extra stop, 0 = time limit only
};

struct IterationRecord {
  double sample_objective = 0.0;
  bool accepted = false;
  int shaking_power = 0;     // scheduled p for the iteration (0 in baseline mode)
  int changed_slots = 0;     // slots the shake re-drew
  int degenerate_before = 0; // degenerate slots in the incumbent before the shake
};

struct ClusteringResult {
  CentroidSet centroids;       // every slot holds a point
  Assignment labels;           // one label per input row
  double objective = 0.0;      // over the full dataset
  std::int64_t iterations = 0;
  double elapsed_s = 0.0;
  std::vector<IterationRecord> trace;
};

// Re-draws centroids against the given sample: every degenerate slot first,
// then p slots picked uniformly among the non-degenerate ones (capped at how
// many there are). Each re-drawn slot comes from kmeanspp_next_center
// conditioned on all slots fixed so far, so later draws avoid earlier ones.
// `changed_slots` (optional) receives the number of re-drawn slots.
CentroidSet shake_centroids(const CentroidSet& centroids, int p, const DataView& sample,
                            const LloydParams& params, Rng& rng, int* changed_slots = nullptr);

// Sample-based clustering search: each iteration draws a uniform sample,
// shakes the incumbent against it, descends with lloyd on the sample, and
// accepts strictly better sample objectives. The shake strength p cycles
// through 1..p_max every iteration regardless of acceptance; baseline_mode
// pins it to 0 so only degenerate slots are ever repaired. After the budget
// runs out, the incumbent is settled by one bounded lloyd descent over the
// full dataset, remaining degenerate slots are repaired, and the final
// centroids are applied to the full dataset.
ClusteringResult big_vns_clust(const DataMatrix& data, const BigVnsParams& params);

// Non-sampling baseline: greedy seeding plus lloyd over the full dataset.
ClusteringResult kmeans_full(const DataMatrix& data, int k, const LloydParams& params,
                             std::uint64_t seed);

// Same, from caller-supplied initial centroids.
ClusteringResult kmeans_full(const DataMatrix& data, const CentroidSet& init,
                             const LloydParams& params, std::uint64_t seed = 0);

}  // namespace vnsclust
