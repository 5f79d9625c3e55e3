#include "vnsclust/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace vnsclust {

namespace {

inline double sq_dist(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return acc;
}

bool row_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool row_equal(std::span<const double> a, std::span<const double> b) {
  return std::equal(a.begin(), a.end(), b.begin());
}

index_t distinct_rows(const DataView& sample, index_t cap) {
  const index_t s = sample.size();
  std::vector<index_t> order(static_cast<std::size_t>(s));
  std::iota(order.begin(), order.end(), index_t{0});
  std::sort(order.begin(), order.end(),
            [&](index_t a, index_t b) { return row_less(sample.row(a), sample.row(b)); });
  index_t distinct = 0;
  for (index_t i = 0; i < s; ++i) {
    if (i == 0 || !row_equal(sample.row(order[static_cast<std::size_t>(i)]),
                             sample.row(order[static_cast<std::size_t>(i - 1)]))) {
      if (++distinct >= cap) return distinct;
    }
  }
  return distinct;
}

}  // namespace

std::vector<double> kmeanspp_next_center(const DataView& sample, const CentroidSet& placed,
                                         const LloydParams& params, Rng& rng) {
  const index_t s = sample.size();
  if (s < 1) throw UsageError("kmeanspp_next_center needs a non-empty sample");
  if (sample.dim() != placed.dim()) {
    throw UsageError("sample and centroid dimensions differ");
  }
  if (params.candidates < 1) throw UsageError("candidates must be >= 1");

  const int k = placed.size();
  const bool empty_u = placed.active_count() == 0;

  // squared distance to the nearest placed center (infinity while none placed,
  // so the greedy evaluation below reduces to the plain objective of the
  // candidate alone)
  std::vector<double> closest(static_cast<std::size_t>(s),
                              std::numeric_limits<double>::infinity());
  std::vector<double> prefix;
  double total = 0.0;
  if (!empty_u) {
    prefix.resize(static_cast<std::size_t>(s));
    for (index_t i = 0; i < s; ++i) {
      const auto x = sample.row(i);
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < k; ++j) {
        if (placed.is_degenerate(j)) continue;
        const double d = sq_dist(x, placed.point(j));
        if (d < best) best = d;
      }
      closest[static_cast<std::size_t>(i)] = best;
      total += best;
      prefix[static_cast<std::size_t>(i)] = total;
    }
    if (total == 0.0) {
      throw DegenerateSampleError("every sample point coincides with a placed center");
    }
  }

  std::vector<index_t> cand(static_cast<std::size_t>(params.candidates));
  if (empty_u) {
    std::uniform_int_distribution<index_t> pick(0, s - 1);
    for (auto& c : cand) c = pick(rng);
  } else {
    std::uniform_real_distribution<double> pick(0.0, total);
    for (auto& c : cand) {
      const double r = pick(rng);
      auto it = std::upper_bound(prefix.begin(), prefix.end(), r);
      c = std::min<index_t>(static_cast<index_t>(it - prefix.begin()), s - 1);
    }
  }

  // greedy pick: candidate whose inclusion minimizes the objective over the sample
  index_t best_cand = cand[0];
  double best_pot = std::numeric_limits<double>::infinity();
  for (const index_t c : cand) {
    const auto xc = sample.row(c);
    double pot = 0.0;
    for (index_t i = 0; i < s; ++i) {
      const double d = sq_dist(sample.row(i), xc);
      pot += std::min(closest[static_cast<std::size_t>(i)], d);
    }
    if (pot < best_pot) {
      best_pot = pot;
      best_cand = c;
    }
  }
  const auto chosen = sample.row(best_cand);
  return {chosen.begin(), chosen.end()};
}

CentroidSet kmeanspp_seed(const DataView& sample, int k, const LloydParams& params, Rng& rng) {
  if (k < 1) throw UsageError("kmeanspp_seed needs k >= 1");
  if (sample.size() < k) throw SeedingError("sample smaller than the requested center count");
  if (distinct_rows(sample, k) < k) {
    throw SeedingError("sample has fewer distinct points than requested centers");
  }
  CentroidSet centers(k, sample.dim());
  for (int j = 0; j < k; ++j) {
    centers.set_point(j, kmeanspp_next_center(sample, centers, params, rng));
  }
  return centers;
}

LloydOutcome lloyd(const DataView& data, const CentroidSet& init, const LloydParams& params,
                   std::vector<double>* objective_trace) {
  if (params.max_iters < 1) throw UsageError("max_iters must be >= 1");
  if (params.rel_tol < 0.0) throw UsageError("rel_tol must be >= 0");
  const int k = init.size();

  AssignResult cur = assign_points(data, init);
  if (objective_trace) objective_trace->push_back(cur.objective);
  LloydOutcome out{init, cur.objective, 0, false};
  while (true) {
    if (out.objective == 0.0) {
      out.converged = true;
      break;
    }
    if (out.iterations >= params.max_iters) break;
    CentroidSet updated = update_centroids(data, cur.labels, k);
    AssignResult next = assign_points(data, updated);
    ++out.iterations;
    if (objective_trace) objective_trace->push_back(next.objective);
    const double improvement = (out.objective - next.objective) / out.objective;
    out.centroids = std::move(updated);
    out.objective = next.objective;
    cur = std::move(next);
    if (improvement < params.rel_tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace vnsclust
