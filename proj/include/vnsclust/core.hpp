#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "vnsclust/errors.hpp"

namespace vnsclust {

using index_t = std::int64_t;
using Rng = std::mt19937_64;

// Dense m x n matrix of points, row major, immutable after construction.
// All values must be finite.
class DataMatrix {
 public:
  DataMatrix(index_t rows, int cols, std::vector<double> values);

  index_t rows() const { return rows_; }
  int cols() const { return cols_; }
  std::span<const double> row(index_t i) const {
    return {values_.data() + i * cols_, static_cast<std::size_t>(cols_)};
  }
  const std::vector<double>& values() const { return values_; }

 private:
  index_t rows_;
  int cols_;
  std::vector<double> values_;
};

// Non-owning view of a subset of a DataMatrix's rows (or of all of them).
// The matrix and the index storage must outlive the view.
class DataView {
 public:
  DataView(const DataMatrix& data)  // NOLINT: implicit full view is intended
      : data_(&data), rows_(), identity_(true) {}
  DataView(const DataMatrix& data, std::span<const index_t> rows)
      : data_(&data), rows_(rows), identity_(false) {}

  index_t size() const { return identity_ ? data_->rows() : static_cast<index_t>(rows_.size()); }
  int dim() const { return data_->cols(); }
  std::span<const double> row(index_t i) const {
    return data_->row(identity_ ? i : rows_[static_cast<std::size_t>(i)]);
  }

 private:
  const DataMatrix* data_;
  std::span<const index_t> rows_;
  bool identity_;
};

// k centroid slots of fixed dimension. A slot is either a point or an
// explicitly tagged empty ("degenerate") slot; degenerate slots never hold
// placeholder coordinates that could leak into arithmetic.
class CentroidSet {
 public:
  CentroidSet(int k, int dim);

  int size() const { return k_; }
  int dim() const { return dim_; }
  bool is_degenerate(int slot) const { return active_[static_cast<std::size_t>(slot)] == 0; }
  int active_count() const { return active_count_; }
  int degenerate_count() const { return k_ - active_count_; }

  std::span<const double> point(int slot) const;
  void set_point(int slot, std::span<const double> coords);
  void set_degenerate(int slot);

 private:
  int k_;
  int dim_;
  int active_count_;
  std::vector<double> coords_;
  std::vector<char> active_;
};

// Per-point centroid slot labels.
using Assignment = std::vector<int>;

struct AssignResult {
  Assignment labels;
  double objective = 0.0;
};

// Indices of a drawn sample, no duplicates.
struct SampleIndexSet {
  std::vector<index_t> indices;

  index_t size() const { return static_cast<index_t>(indices.size()); }
  DataView view(const DataMatrix& data) const { return {data, indices}; }
};

// Squared Euclidean distance. Throws UsageError on dimension mismatch.
double squared_distance(std::span<const double> a, std::span<const double> b);

// Nearest-centroid assignment over the non-degenerate slots; ties go to the
// lowest slot index. The objective is the plain sum of the per-point squared
// distances, accumulated in order. Throws InvalidSolutionError when every
// slot is degenerate.
AssignResult assign_points(const DataView& points, const CentroidSet& centroids);

// Same scan as assign_points without materializing the labels.
double objective(const DataView& points, const CentroidSet& centroids);

// Mean of the points carrying each label; slots that receive no points come
// back degenerate. Labels must lie in [0, k).
CentroidSet update_centroids(const DataView& points, const Assignment& labels, int k);

// Uniform sample of s distinct indices from [0, m). Throws UsageError unless
// 1 <= s <= m.
SampleIndexSet draw_sample(index_t m, index_t s, Rng& rng);

}  // namespace vnsclust
