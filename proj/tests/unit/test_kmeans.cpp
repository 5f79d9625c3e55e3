#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "vnsclust/kmeans.hpp"

using namespace vnsclust;

namespace {

bool same_point(std::span<const double> a, const std::vector<double>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

TEST_CASE("next center never redraws a point sitting on a placed center") {
  // two points, one of them already a center: the other has all the weight
  const DataMatrix data = fixtures::make_matrix({{1.0, 1.0}, {4.0, 5.0}});
  const CentroidSet placed = fixtures::make_centroids({{1.0, 1.0}});
  LloydParams params;
  params.candidates = 1;
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const std::vector<double> next = kmeanspp_next_center(data, placed, params, rng);
    CHECK(next == std::vector<double>{4.0, 5.0});
  }
}

TEST_CASE("next center with one candidate draws proportionally to squared distance") {
  // weights 100 and 25 against the placed origin -> 0.8 / 0.2
  const DataMatrix data =
      fixtures::make_matrix({{0.0, 0.0}, {10.0, 0.0}, {5.0, 0.0}});
  const CentroidSet placed = fixtures::make_centroids({{0.0, 0.0}});
  LloydParams params;
  params.candidates = 1;
  Rng rng(7);
  int far_hits = 0;
  const int draws = 20000;
  for (int t = 0; t < draws; ++t) {
    const std::vector<double> next = kmeanspp_next_center(data, placed, params, rng);
    if (next[0] == 10.0) ++far_hits;
  }
  const double freq = static_cast<double>(far_hits) / draws;
  CHECK(freq == doctest::Approx(0.8).epsilon(0.03));
}

TEST_CASE("greedy candidates pick the point with the lowest resulting objective") {
  // the overwhelming-weight point is also the best greedy choice, so every
  // seed must return it
  const DataMatrix data =
      fixtures::make_matrix({{0.0, 0.0}, {100.0, 0.0}, {6.0, 0.0}});
  const CentroidSet placed = fixtures::make_centroids({{0.0, 0.0}});
  LloydParams params;
  params.candidates = 8;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const std::vector<double> next = kmeanspp_next_center(data, placed, params, rng);
    CHECK(next == std::vector<double>{100.0, 0.0});
  }
}

TEST_CASE("greedy pick is by objective, not by draw weight") {
  // x = 12 has the largest draw weight from the origin, but placing the
  // center at x = 9 covers the right-hand group {8, 9, 12} far better:
  //   pot(9)  = min(64,1) + 0 + min(144,9) = 10   (plus the origin's 0)
  //   pot(12) = min(64,16) + min(81,9) + 0 = 25
  //   pot(8)  = 0 + min(81,1) + min(144,16) = 17
  // with many candidates every positive-weight point gets drawn, so the
  // greedy step must settle on 9 whatever the seed
  const DataMatrix data =
      fixtures::make_matrix({{0.0}, {8.0}, {9.0}, {12.0}});
  const CentroidSet placed = fixtures::make_centroids({{0.0}});
  LloydParams params;
  params.candidates = 64;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const std::vector<double> next = kmeanspp_next_center(data, placed, params, rng);
    CHECK(next == std::vector<double>{9.0});
  }
}

TEST_CASE("next center reports a degenerate sample") {
  const DataMatrix data = fixtures::make_matrix({{2.0, 2.0}, {2.0, 2.0}});
  const CentroidSet placed = fixtures::make_centroids({{2.0, 2.0}});
  LloydParams params;
  Rng rng(3);
  CHECK_THROWS_AS(kmeanspp_next_center(data, placed, params, rng), DegenerateSampleError);
}

TEST_CASE("next center with no placed centers draws uniformly") {
  const DataMatrix data = fixtures::make_matrix({{0.0}, {1.0}, {2.0}, {3.0}});
  const CentroidSet placed(2, 1);  // all slots still degenerate
  LloydParams params;
  params.candidates = 1;
  Rng rng(11);
  std::map<double, int> hits;
  const int draws = 40000;
  for (int t = 0; t < draws; ++t) {
    const std::vector<double> next = kmeanspp_next_center(data, placed, params, rng);
    ++hits[next[0]];
  }
  CHECK(hits.size() == 4);
  for (const auto& [value, count] : hits) {
    CHECK(static_cast<double>(count) / draws == doctest::Approx(0.25).epsilon(0.1));
  }
}

TEST_CASE("seeding requires k distinct sample points") {
  const DataMatrix tiny = fixtures::make_matrix({{1.0, 2.0}});
  LloydParams params;
  Rng rng(1);
  CHECK_THROWS_AS(kmeanspp_seed(tiny, 2, params, rng), SeedingError);

  const DataMatrix dupes =
      fixtures::make_matrix({{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}});
  CHECK_THROWS_AS(kmeanspp_seed(dupes, 2, params, rng), SeedingError);
  const CentroidSet single = kmeanspp_seed(dupes, 1, params, rng);
  CHECK(same_point(single.point(0), {1.0, 2.0}));
}

TEST_CASE("seeding spreads centers over well separated clusters") {
  // two tight blobs far apart: a seeded pair should straddle them every time
  Rng gen(42);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<double> values;
  for (int i = 0; i < 50; ++i) {
    values.push_back(0.0 + noise(gen));
    values.push_back(0.0 + noise(gen));
  }
  for (int i = 0; i < 50; ++i) {
    values.push_back(10.0 + noise(gen));
    values.push_back(10.0 + noise(gen));
  }
  const DataMatrix data(100, 2, std::move(values));
  LloydParams params;
  int straddles = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const CentroidSet centers = kmeanspp_seed(data, 2, params, rng);
    const bool a_left = centers.point(0)[0] < 5.0;
    const bool b_left = centers.point(1)[0] < 5.0;
    if (a_left != b_left) ++straddles;
  }
  CHECK(straddles >= 95);
}

TEST_CASE("seeding fills every slot with an actual sample row") {
  Rng rng(9);
  const DataMatrix data = fixtures::random_matrix(40, 3, rng);
  LloydParams params;
  const CentroidSet centers = kmeanspp_seed(data, 5, params, rng);
  CHECK(centers.degenerate_count() == 0);
  for (int j = 0; j < centers.size(); ++j) {
    bool found = false;
    for (index_t i = 0; i < data.rows() && !found; ++i) {
      found = std::equal(data.row(i).begin(), data.row(i).end(), centers.point(j).begin());
    }
    CHECK(found);
  }
}

TEST_CASE("descent matches the naive reference trajectory bit for bit") {
  Rng rng(21);
  for (int rep = 0; rep < 25; ++rep) {
    const index_t m = std::uniform_int_distribution<index_t>(5, 80)(rng);
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    const int k = static_cast<int>(std::min<index_t>(std::uniform_int_distribution<int>(1, 5)(rng), m));
    const DataMatrix data = fixtures::random_matrix(m, n, rng);
    const CentroidSet init = fixtures::random_row_init(data, k, rng);

    LloydParams params;
    std::vector<double> trace;
    const LloydOutcome out = lloyd(data, init, params, &trace);

    const oracle::LloydResult ref = oracle::lloyd(oracle::to_matrix(data),
                                                  oracle::to_centers(init), k, n,
                                                  params.max_iters, params.rel_tol);
    CHECK(out.objective == ref.objective);
    CHECK(out.iterations == ref.iterations);
    CHECK(out.converged == ref.converged);
    CHECK(trace == ref.trajectory);
    CHECK(oracle::same_centers(ref.centers, out.centroids));
  }
}

TEST_CASE("descent never increases the objective along its trace") {
  Rng rng(33);
  for (int rep = 0; rep < 20; ++rep) {
    const DataMatrix data = fixtures::random_matrix(60, 2, rng);
    const CentroidSet init = fixtures::random_row_init(data, 4, rng);
    std::vector<double> trace;
    lloyd(data, init, LloydParams{}, &trace);
    REQUIRE(trace.size() >= 1);
    for (std::size_t t = 1; t < trace.size(); ++t) CHECK(trace[t] <= trace[t - 1]);
  }
}

TEST_CASE("a fixed point converges after one confirming pass, unchanged") {
  Rng rng(37);
  const DataMatrix data = fixtures::random_matrix(50, 2, rng);
  const CentroidSet init = fixtures::random_row_init(data, 3, rng);
  const LloydOutcome first = lloyd(data, init, LloydParams{});
  REQUIRE(first.converged);

  const LloydOutcome again = lloyd(data, first.centroids, LloydParams{});
  CHECK(again.converged);
  CHECK(again.iterations <= 1);
  CHECK(again.objective == first.objective);
  CHECK(oracle::same_centers(oracle::to_centers(first.centroids), again.centroids));
}

TEST_CASE("zero tolerance runs to the iteration cap") {
  Rng rng(41);
  const DataMatrix data = fixtures::random_matrix(60, 2, rng);
  const CentroidSet init = fixtures::random_row_init(data, 3, rng);
  LloydParams params;
  params.rel_tol = 0.0;
  params.max_iters = 7;
  const LloydOutcome out = lloyd(data, init, params);
  CHECK(out.iterations == 7);
  CHECK(!out.converged);
}

TEST_CASE("a perfectly clustered input stops at objective zero") {
  const DataMatrix data =
      fixtures::make_matrix({{0.0, 0.0}, {0.0, 0.0}, {9.0, 9.0}});
  const CentroidSet init = fixtures::make_centroids({{0.0, 0.0}, {9.0, 9.0}});
  const LloydOutcome out = lloyd(data, init, LloydParams{});
  CHECK(out.objective == 0.0);
  CHECK(out.converged);
  CHECK(out.iterations == 0);
}

TEST_CASE("slots that capture no points stay degenerate through the descent") {
  // the first update pulls the two centers onto the points and empties the
  // third slot, which must then stay degenerate
  const DataMatrix data = fixtures::make_matrix({{0.0, 0.0}, {2.0, 0.0}});
  const CentroidSet init =
      fixtures::make_centroids({{0.0, 0.0}, {1.5, 0.0}, {50.0, 50.0}});
  const LloydOutcome out = lloyd(data, init, LloydParams{});
  CHECK(out.centroids.is_degenerate(2));
  CHECK(out.objective == 0.0);
}

TEST_CASE("descent is deterministic and independent of hidden state") {
  Rng rng(43);
  const DataMatrix data = fixtures::random_matrix(70, 3, rng);
  const CentroidSet init = fixtures::random_row_init(data, 4, rng);
  const LloydOutcome a = lloyd(data, init, LloydParams{});
  const LloydOutcome b = lloyd(data, init, LloydParams{});
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
  CHECK(oracle::same_centers(oracle::to_centers(a.centroids), b.centroids));
}

TEST_CASE("descent on a sample view touches only the sampled rows") {
  Rng rng(47);
  const DataMatrix data = fixtures::random_matrix(100, 2, rng);
  SampleIndexSet sample = draw_sample(100, 20, rng);
  std::sort(sample.indices.begin(), sample.indices.end());
  const DataView view = sample.view(data);

  // the same rows as a standalone matrix must give the same trajectory
  std::vector<double> values;
  for (const index_t i : sample.indices) {
    const auto row = data.row(i);
    values.insert(values.end(), row.begin(), row.end());
  }
  const DataMatrix packed(20, 2, std::move(values));

  const CentroidSet init = fixtures::random_row_init(packed, 3, rng);
  std::vector<double> trace_view, trace_packed;
  const LloydOutcome via_view = lloyd(view, init, LloydParams{}, &trace_view);
  const LloydOutcome via_packed = lloyd(packed, init, LloydParams{}, &trace_packed);
  CHECK(via_view.objective == via_packed.objective);
  CHECK(trace_view == trace_packed);
}
