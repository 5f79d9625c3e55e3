#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "support/toy_problem.hpp"
#include "vnsclust/vns.hpp"

using namespace vnsclust;
using vns::ChangePolicy;

namespace {

// brute-force local optimality of state i over layered neighborhoods 1..l_max
bool layered_local_optimum(int i, int l_max) {
  for (int l = 1; l <= l_max; ++l) {
    for (const int j : toy::layered_neighborhood(i, l)) {
      if (toy::value(j) < toy::value(i)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("shake on a singleton neighborhood returns its only member") {
  Rng rng(1);
  const auto nbhd = [](int, int) { return std::vector<int>{77}; };
  for (int rep = 0; rep < 10; ++rep) {
    CHECK(vns::shake(0, 1, nbhd, vns::UniformWeights{}, rng) == 77);
  }
}

TEST_CASE("uniform shake draws each member equally often") {
  Rng rng(2);
  const auto nbhd = [](int, int) { return std::vector<int>{10, 20, 30, 40}; };
  std::map<int, int> hits;
  const int draws = 40000;
  for (int t = 0; t < draws; ++t) ++hits[vns::shake(0, 1, nbhd, vns::UniformWeights{}, rng)];
  CHECK(hits.size() == 4);
  for (const auto& [member, count] : hits) {
    CHECK(static_cast<double>(count) / draws == doctest::Approx(0.25).epsilon(0.1));
  }
}

TEST_CASE("weighted shake follows the weights") {
  Rng rng(3);
  const auto nbhd = [](int, int) { return std::vector<int>{1, 2}; };
  const auto weights = [](int, int, const std::vector<int>&) {
    return std::vector<double>{3.0, 1.0};
  };
  int first = 0;
  const int draws = 40000;
  for (int t = 0; t < draws; ++t) {
    if (vns::shake(0, 1, nbhd, weights, rng) == 1) ++first;
  }
  CHECK(static_cast<double>(first) / draws == doctest::Approx(0.75).epsilon(0.05));
}

TEST_CASE("shake always lands inside the declared neighborhood") {
  Rng rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    const int x = std::uniform_int_distribution<int>(0, toy::kStates - 1)(rng);
    const int p = std::uniform_int_distribution<int>(1, 4)(rng);
    const int y = vns::shake(x, p, toy::shake_neighborhood, vns::UniformWeights{}, rng);
    CHECK(y != x);
    CHECK(std::abs(y - x) <= 8 * p);
    CHECK(toy::in_range(y));
  }
}

TEST_CASE("shake rejects broken inputs") {
  Rng rng(5);
  const auto empty_nbhd = [](int, int) { return std::vector<int>{}; };
  CHECK_THROWS_AS(vns::shake(0, 1, empty_nbhd, vns::UniformWeights{}, rng), ShakingError);

  const auto nbhd = [](int, int) { return std::vector<int>{1, 2}; };
  const auto short_weights = [](int, int, const std::vector<int>&) {
    return std::vector<double>{1.0};
  };
  CHECK_THROWS_AS(vns::shake(0, 1, nbhd, short_weights, rng), UsageError);

  const auto negative_weights = [](int, int, const std::vector<int>&) {
    return std::vector<double>{1.0, -0.5};
  };
  CHECK_THROWS_AS(vns::shake(0, 1, nbhd, negative_weights, rng), UsageError);

  const auto zero_weights = [](int, int, const std::vector<int>&) {
    return std::vector<double>{0.0, 0.0};
  };
  CHECK_THROWS_AS(vns::shake(0, 1, nbhd, zero_weights, rng), UsageError);
}

TEST_CASE("sequential change restarts on improvement and advances otherwise") {
  const auto better = vns::neighborhood_change_sequential(5, 10.0, 6, 9.0, 3);
  CHECK(better.solution == 6);
  CHECK(better.value == 9.0);
  CHECK(better.next_index == 1);

  const auto equal = vns::neighborhood_change_sequential(5, 10.0, 6, 10.0, 3);
  CHECK(equal.solution == 5);  // ties are not improvements
  CHECK(equal.value == 10.0);
  CHECK(equal.next_index == 4);

  const auto worse = vns::neighborhood_change_sequential(5, 10.0, 6, 11.0, 3);
  CHECK(worse.solution == 5);
  CHECK(worse.next_index == 4);
}

TEST_CASE("cyclic change always advances, accepting improvements") {
  const auto better = vns::neighborhood_change_cyclic(5, 10.0, 6, 9.0, 3);
  CHECK(better.solution == 6);
  CHECK(better.value == 9.0);
  CHECK(better.next_index == 4);

  const auto equal = vns::neighborhood_change_cyclic(5, 10.0, 6, 10.0, 3);
  CHECK(equal.solution == 5);
  CHECK(equal.next_index == 4);

  const auto worse = vns::neighborhood_change_cyclic(5, 10.0, 6, 11.0, 3);
  CHECK(worse.solution == 5);
  CHECK(worse.next_index == 4);
}

TEST_CASE("best-improvement descent walks a smooth valley to its floor") {
  // f(i) = (i - 7)^2 on 0..20, stepping +-1: from 0 the walk must end at 7
  const auto neighbors = [](int i) {
    std::vector<int> out;
    if (i > 0) out.push_back(i - 1);
    if (i < 20) out.push_back(i + 1);
    return out;
  };
  const auto f = [](int i) { return static_cast<double>((i - 7) * (i - 7)); };
  CHECK(vns::best_improvement_local_search(0, neighbors, f) == 7);
  CHECK(vns::best_improvement_local_search(20, neighbors, f) == 7);
  CHECK(vns::best_improvement_local_search(7, neighbors, f) == 7);
}

TEST_CASE("best-improvement descent breaks ties toward the earliest member") {
  // both neighbors of 0 improve by the same amount; enumeration order decides
  const auto neighbors = [](int i) {
    if (i == 0) return std::vector<int>{1, 2};
    return std::vector<int>{};
  };
  const auto f = [](int i) {
    if (i == 0) return 5.0;
    return 1.0;  // states 1 and 2 tie
  };
  CHECK(vns::best_improvement_local_search(0, neighbors, f) == 1);
}

TEST_CASE("best-improvement descent takes the steepest member, not the first improving one") {
  const auto neighbors = [](int i) {
    if (i == 0) return std::vector<int>{1, 2};
    return std::vector<int>{};
  };
  const auto f = [](int i) {
    if (i == 0) return 5.0;
    if (i == 1) return 4.0;
    return 2.0;  // strictly best
  };
  CHECK(vns::best_improvement_local_search(0, neighbors, f) == 2);
}

TEST_CASE("layered descent escapes a plateau a single layer cannot") {
  // f has a one-step local minimum at 10 whose two-step neighbor is better
  const auto f = [](int i) {
    switch (i) {
      case 8: return 9.0;
      case 9: return 6.0;
      case 10: return 5.0;
      case 11: return 6.5;
      case 12: return 1.0;
      default: return 100.0;
    }
  };
  const auto layers = [](int i, int l) {
    std::vector<int> out;
    if (i - l >= 0) out.push_back(i - l);
    if (i + l <= 20) out.push_back(i + l);
    return out;
  };
  // one layer stalls at 10; two layers see 12 and finish there
  CHECK(vns::b_vnd(10, 1, layers, ChangePolicy::sequential, f) == 10);
  CHECK(vns::b_vnd(10, 2, layers, ChangePolicy::sequential, f) == 12);
  CHECK(vns::b_vnd(10, 2, layers, ChangePolicy::cyclic, f) == 12);
  CHECK_THROWS_AS(vns::b_vnd(10, 0, layers, ChangePolicy::sequential, f), UsageError);
}

TEST_CASE("layered descent output is locally optimal in every layer") {
  Rng rng(6);
  for (int rep = 0; rep < 50; ++rep) {
    const int start = std::uniform_int_distribution<int>(0, toy::kStates - 1)(rng);
    const int l_max = std::uniform_int_distribution<int>(1, 5)(rng);
    const ChangePolicy policy = rep % 2 == 0 ? ChangePolicy::sequential : ChangePolicy::cyclic;
    const int end = vns::b_vnd(start, l_max, toy::layered_neighborhood, policy,
                               [](int i) { return toy::value(i); });
    CHECK(layered_local_optimum(end, l_max));
    CHECK(toy::value(end) <= toy::value(start));
  }
}

TEST_CASE("the full search never worsens its start and respects its budget") {
  Rng rng(7);
  const auto f = [](int i) { return toy::value(i); };
  for (int rep = 0; rep < 5; ++rep) {
    const int start = std::uniform_int_distribution<int>(0, toy::kStates - 1)(rng);
    const auto t0 = std::chrono::steady_clock::now();
    const auto state = vns::basic_vns(start, 4, 0.05, toy::shake_neighborhood,
                                      vns::UniformWeights{}, toy::improve_neighborhood, f,
                                      ChangePolicy::sequential, rng);
    const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(state.incumbent_value <= f(start));
    CHECK(state.incumbent_value == f(state.incumbent));
    CHECK(state.neighborhood_index >= 1);
    CHECK(state.neighborhood_index <= 4);
    CHECK(took < 1.0);  // one shake-descend round on this toy is microseconds
  }
}

TEST_CASE("the full search reaches the exhaustive optimum on the toy landscape") {
  const int best = toy::global_optimum();
  const auto f = [](int i) { return toy::value(i); };
  Rng rng(8);
  int hits = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const auto state = vns::basic_vns(0, 6, 0.02, toy::shake_neighborhood, vns::UniformWeights{},
                                      toy::improve_neighborhood, f, ChangePolicy::sequential, rng);
    if (state.incumbent == best) ++hits;
  }
  CHECK(hits >= 36);
}

TEST_CASE("the full search validates its arguments") {
  Rng rng(9);
  const auto f = [](int i) { return toy::value(i); };
  CHECK_THROWS_AS(vns::basic_vns(0, 0, 0.01, toy::shake_neighborhood, vns::UniformWeights{},
                                 toy::improve_neighborhood, f, ChangePolicy::sequential, rng),
                  UsageError);
  CHECK_THROWS_AS(vns::basic_vns(0, 3, 0.0, toy::shake_neighborhood, vns::UniformWeights{},
                                 toy::improve_neighborhood, f, ChangePolicy::sequential, rng),
                  UsageError);
}
