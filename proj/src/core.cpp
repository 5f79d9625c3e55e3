#include "vnsclust/core.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace vnsclust {

DataMatrix::DataMatrix(index_t rows, int cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows < 1 || cols < 1) {
    throw UsageError("DataMatrix needs at least one row and one column");
  }
  if (static_cast<index_t>(values_.size()) != rows * cols) {
    throw UsageError("DataMatrix value count does not match rows*cols");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw UsageError("DataMatrix values must be finite");
  }
}

CentroidSet::CentroidSet(int k, int dim)
    : k_(k),
      dim_(dim),
      active_count_(0),
      coords_(static_cast<std::size_t>(k) * static_cast<std::size_t>(dim), 0.0),
      active_(static_cast<std::size_t>(k), 0) {
  if (k < 1 || dim < 1) throw UsageError("CentroidSet needs k >= 1 and dim >= 1");
}

std::span<const double> CentroidSet::point(int slot) const {
  if (slot < 0 || slot >= k_) throw UsageError("centroid slot out of range");
  if (is_degenerate(slot)) throw UsageError("centroid slot is degenerate");
  return {coords_.data() + static_cast<std::size_t>(slot) * dim_, static_cast<std::size_t>(dim_)};
}

void CentroidSet::set_point(int slot, std::span<const double> coords) {
  if (slot < 0 || slot >= k_) throw UsageError("centroid slot out of range");
  if (static_cast<int>(coords.size()) != dim_) {
    throw UsageError("centroid dimension mismatch");
  }
  for (double v : coords) {
    if (!std::isfinite(v)) throw UsageError("centroid coordinates must be finite");
  }
  if (is_degenerate(slot)) {
    active_[static_cast<std::size_t>(slot)] = 1;
    ++active_count_;
  }
  std::copy(coords.begin(), coords.end(),
            coords_.begin() + static_cast<std::size_t>(slot) * dim_);
}

void CentroidSet::set_degenerate(int slot) {
  if (slot < 0 || slot >= k_) throw UsageError("centroid slot out of range");
  if (!is_degenerate(slot)) {
    active_[static_cast<std::size_t>(slot)] = 0;
    --active_count_;
    std::fill_n(coords_.begin() + static_cast<std::size_t>(slot) * dim_, dim_, 0.0);
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw UsageError("squared_distance dimension mismatch");
  double acc = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return acc;
}

namespace {

// Same arithmetic as squared_distance, without the per-call size check.
inline double sq_dist(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return acc;
}

inline void check_compatible(const DataView& points, const CentroidSet& centroids) {
  if (points.dim() != centroids.dim()) {
    throw UsageError("points and centroids have different dimensions");
  }
  if (centroids.active_count() == 0) {
    throw InvalidSolutionError("every centroid slot is degenerate");
  }
}

}  // namespace

AssignResult assign_points(const DataView& points, const CentroidSet& centroids) {
  check_compatible(points, centroids);
  const index_t m = points.size();
  const int k = centroids.size();
  AssignResult out;
  out.labels.resize(static_cast<std::size_t>(m));
  double total = 0.0;
  for (index_t i = 0; i < m; ++i) {
    const auto x = points.row(i);
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j) {
      if (centroids.is_degenerate(j)) continue;
      const double d = sq_dist(x, centroids.point(j));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    out.labels[static_cast<std::size_t>(i)] = best;
    total += best_d;
  }
  out.objective = total;
  return out;
}

double objective(const DataView& points, const CentroidSet& centroids) {
  check_compatible(points, centroids);
  const index_t m = points.size();
  const int k = centroids.size();
  double total = 0.0;
  for (index_t i = 0; i < m; ++i) {
    const auto x = points.row(i);
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j) {
      if (centroids.is_degenerate(j)) continue;
      const double d = sq_dist(x, centroids.point(j));
      if (d < best_d) best_d = d;
    }
    total += best_d;
  }
  return total;
}

CentroidSet update_centroids(const DataView& points, const Assignment& labels, int k) {
  if (k < 1) throw UsageError("update_centroids needs k >= 1");
  const index_t m = points.size();
  if (static_cast<index_t>(labels.size()) != m) {
    throw UsageError("label count does not match point count");
  }
  const int n = points.dim();
  std::vector<double> sums(static_cast<std::size_t>(k) * n, 0.0);
  std::vector<index_t> counts(static_cast<std::size_t>(k), 0);
  for (index_t i = 0; i < m; ++i) {
    const int label = labels[static_cast<std::size_t>(i)];
    if (label < 0 || label >= k) throw UsageError("label out of range");
    const auto x = points.row(i);
    double* dst = sums.data() + static_cast<std::size_t>(label) * n;
    for (int d = 0; d < n; ++d) dst[d] += x[d];
    ++counts[static_cast<std::size_t>(label)];
  }
  CentroidSet out(k, n);
  std::vector<double> mean(static_cast<std::size_t>(n));
  for (int j = 0; j < k; ++j) {
    if (counts[static_cast<std::size_t>(j)] == 0) continue;  // stays degenerate
    const double* src = sums.data() + static_cast<std::size_t>(j) * n;
    const double cnt = static_cast<double>(counts[static_cast<std::size_t>(j)]);
    for (int d = 0; d < n; ++d) mean[static_cast<std::size_t>(d)] = src[d] / cnt;
    out.set_point(j, mean);
  }
  return out;
}

SampleIndexSet draw_sample(index_t m, index_t s, Rng& rng) {
  if (s < 1 || s > m) throw UsageError("sample size must satisfy 1 <= s <= m");
  std::vector<index_t> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), index_t{0});
  // partial Fisher-Yates: the first s entries end up a uniform s-subset
  for (index_t i = 0; i < s; ++i) {
    std::uniform_int_distribution<index_t> pick(i, m - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  idx.resize(static_cast<std::size_t>(s));
  return SampleIndexSet{std::move(idx)};
}

}  // namespace vnsclust
