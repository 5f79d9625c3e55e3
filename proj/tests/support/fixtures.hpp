#pragma once

#include <vector>

#include "vnsclust/core.hpp"
#include "vnsclust/synthetic.hpp"

namespace fixtures {

inline vnsclust::DataMatrix make_matrix(const std::vector<std::vector<double>>& rows) {
  std::vector<double> values;
  for (const auto& row : rows) values.insert(values.end(), row.begin(), row.end());
  return vnsclust::DataMatrix(static_cast<vnsclust::index_t>(rows.size()),
                              static_cast<int>(rows.front().size()), std::move(values));
}

inline vnsclust::CentroidSet make_centroids(const std::vector<std::vector<double>>& points) {
  vnsclust::CentroidSet out(static_cast<int>(points.size()),
                            static_cast<int>(points.front().size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    out.set_point(static_cast<int>(j), points[j]);
  }
  return out;
}

// The three-blob 2-d benchmark mixture: one wide cluster holding half the
// points and two tighter ones, close enough to overlap. A plain full-data
// descent started badly tends to merge the two tight blobs and split the wide
// one, which is exactly the trap the sampling search should escape.
inline vnsclust::MixtureSpec three_blob_mixture() {
  vnsclust::MixtureSpec spec;
  spec.name = "blobs3";
  spec.dim = 2;
  spec.components = {
      {3000, {0.2, 0.5}, 0.15},
      {1500, {0.7, 0.8}, 0.08},
      {1500, {0.5, 1.0}, 0.10},
  };
  return spec;
}

// Initial centroids that drive the full-data descent into the trap above:
// two centers stacked under the wide blob, one on the far blob.
inline vnsclust::CentroidSet adversarial_init() {
  return make_centroids({{0.1, 0.2}, {0.1, 0.15}, {0.5, 1.0}});
}

// Uniform random points in [0, 1]^dim for property tests.
inline vnsclust::DataMatrix random_matrix(vnsclust::index_t m, int dim, vnsclust::Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(m) * dim);
  for (auto& v : values) v = unit(rng);
  return vnsclust::DataMatrix(m, dim, std::move(values));
}

// k random distinct data rows as initial centroids.
inline vnsclust::CentroidSet random_row_init(const vnsclust::DataMatrix& data, int k,
                                             vnsclust::Rng& rng) {
  const vnsclust::SampleIndexSet pick = vnsclust::draw_sample(data.rows(), k, rng);
  vnsclust::CentroidSet out(k, data.cols());
  for (int j = 0; j < k; ++j) {
    out.set_point(j, data.row(pick.indices[static_cast<std::size_t>(j)]));
  }
  return out;
}

}  // namespace fixtures
