#pragma once

#include <vector>

#include "vnsclust/core.hpp"

namespace vnsclust {

struct LloydParams {
  int max_iters = 300;
  double rel_tol = 1e-4;  // stop once (f_prev - f_cur) / f_prev < rel_tol
  int candidates = 3;     // greedy seeding candidates per center
};

struct LloydOutcome {
  CentroidSet centroids;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

// One greedy seeding step: draws `candidates` points with probability
// proportional to the squared distance to the nearest already placed center
// (uniformly when no center is placed yet) and returns the candidate whose
// inclusion gives the lowest clustering objective over the sample. The placed
// centers are the non-degenerate slots of `placed`. Throws
// DegenerateSampleError when every sample point sits exactly on a placed
// center.
std::vector<double> kmeanspp_next_center(const DataView& sample, const CentroidSet& placed,
                                         const LloydParams& params, Rng& rng);

// Full seeding: k slots filled by repeated kmeanspp_next_center with the
// placed set growing from empty. Throws SeedingError when the sample has
// fewer than k distinct points.
CentroidSet kmeanspp_seed(const DataView& sample, int k, const LloydParams& params, Rng& rng);

// Alternates assignment and centroid update from the given initial centroids.
// Slots that lose all their points become degenerate and stay that way; the
// caller decides whether and how to repair them. When `objective_trace` is
// given it receives the objective after the initial assignment and after each
// iteration.
LloydOutcome lloyd(const DataView& data, const CentroidSet& init, const LloydParams& params,
                   std::vector<double>* objective_trace = nullptr);

}  // namespace vnsclust
