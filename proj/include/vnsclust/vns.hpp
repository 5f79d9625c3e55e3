#pragma once

// Generic variable neighborhood search kernel. Everything here is
// problem-agnostic: solutions are opaque values, neighborhoods are callables
// that enumerate candidate solutions, and the objective is any deterministic
// evaluation function. The clustering search in big_vns.hpp follows the same
// scheme with problem-specific shaking, so this kernel is exercised by small
// discrete problems in the test suite.

#include <chrono>
#include <numeric>
#include <utility>
#include <vector>

#include "vnsclust/core.hpp"
#include "vnsclust/errors.hpp"

namespace vnsclust::vns {

enum class ChangePolicy {
  sequential,  // improvement restarts from the first neighborhood
  cyclic,      // always move on to the next neighborhood
};

template <typename Solution>
struct VnsState {
  Solution incumbent;
  double incumbent_value = 0.0;
  int neighborhood_index = 1;
};

template <typename Solution>
struct ChangeOutcome {
  Solution solution;
  double value = 0.0;
  int next_index = 1;
};

// Weight functor for unweighted shaking draws.
struct UniformWeights {
  template <typename Solution>
  std::vector<double> operator()(const Solution&, int, const std::vector<Solution>&) const {
    return {};
  }
};

// Draws one member of the p-th shake neighborhood of x. `neighborhoods(x, p)`
// enumerates the members; `weights(x, p, members)` returns one weight per
// member, or an empty vector for a uniform draw.
template <typename Solution, typename ShakeNbhd, typename Weights>
Solution shake(const Solution& x, int p, ShakeNbhd&& neighborhoods, Weights&& weights,
               Rng& rng) {
  std::vector<Solution> members = neighborhoods(x, p);
  if (members.empty()) throw ShakingError("shake neighborhood is empty");
  std::vector<double> w = weights(x, p, members);
  if (w.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    return std::move(members[pick(rng)]);
  }
  if (w.size() != members.size()) {
    throw UsageError("shake weight count does not match neighborhood size");
  }
  double total = 0.0;
  for (double v : w) {
    if (v < 0.0) throw UsageError("shake weights must be non-negative");
    total += v;
  }
  if (total <= 0.0) throw UsageError("shake weights sum to zero");
  std::uniform_real_distribution<double> pick(0.0, total);
  const double r = pick(rng);
  double acc = 0.0;
  std::size_t idx = members.size() - 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (r < acc) {
      idx = i;
      break;
    }
  }
  return std::move(members[idx]);
}

// Move to the candidate and restart from the first neighborhood on strict
// improvement; otherwise keep the incumbent and advance.
template <typename Solution>
ChangeOutcome<Solution> neighborhood_change_sequential(Solution x, double fx, Solution candidate,
                                                       double f_candidate, int p) {
  if (f_candidate < fx) return {std::move(candidate), f_candidate, 1};
  return {std::move(x), fx, p + 1};
}

// Accept strict improvements but advance to the next neighborhood either way.
template <typename Solution>
ChangeOutcome<Solution> neighborhood_change_cyclic(Solution x, double fx, Solution candidate,
                                                   double f_candidate, int p) {
  if (f_candidate < fx) return {std::move(candidate), f_candidate, p + 1};
  return {std::move(x), fx, p + 1};
}

// Repeatedly jumps to the best member of N(x) while that strictly improves.
// Ties between equally good members go to the earliest enumerated one.
template <typename Solution, typename Nbhd, typename Eval>
Solution best_improvement_local_search(Solution x, Nbhd&& neighbors, Eval&& f) {
  double fx = f(x);
  while (true) {
    std::vector<Solution> members = neighbors(x);
    double best = fx;
    std::size_t best_i = members.size();
    for (std::size_t i = 0; i < members.size(); ++i) {
      const double fy = f(members[i]);
      if (fy < best) {
        best = fy;
        best_i = i;
      }
    }
    if (best_i == members.size()) break;  // no strict improvement left
    x = std::move(members[best_i]);
    fx = best;
  }
  return x;
}

// Best-improvement descent through neighborhoods N_1..N_lmax; stops once a
// full pass over all of them yields no improvement, so the result is locally
// optimal with respect to every neighborhood.
template <typename Solution, typename Nbhds, typename Eval>
Solution b_vnd(Solution x, int l_max, Nbhds&& neighborhoods, ChangePolicy policy, Eval&& f) {
  if (l_max < 1) throw UsageError("b_vnd needs l_max >= 1");
  double fx = f(x);
  bool improved = true;
  while (improved) {
    improved = false;
    int l = 1;
    while (l <= l_max) {
      std::vector<Solution> members = neighborhoods(x, l);
      double best = fx;
      std::size_t best_i = members.size();
      for (std::size_t i = 0; i < members.size(); ++i) {
        const double fy = f(members[i]);
        if (fy < best) {
          best = fy;
          best_i = i;
        }
      }
      if (best_i != members.size()) {
        improved = true;
        auto out = policy == ChangePolicy::sequential
                       ? neighborhood_change_sequential(std::move(x), fx,
                                                        std::move(members[best_i]), best, l)
                       : neighborhood_change_cyclic(std::move(x), fx, std::move(members[best_i]),
                                                    best, l);
        x = std::move(out.solution);
        fx = out.value;
        l = out.next_index;
      } else {
        ++l;
      }
    }
  }
  return x;
}

// Shake -> descend -> change, with the shake index cycling through 1..k_max,
// until the wall-clock budget runs out. Returns the incumbent and its value.
template <typename Solution, typename ShakeNbhd, typename Weights, typename ImproveNbhd,
          typename Eval>
VnsState<Solution> basic_vns(Solution initial, int k_max, double time_limit_s,
                             ShakeNbhd&& shake_neighborhoods, Weights&& shake_weights,
                             ImproveNbhd&& improve_neighborhood, Eval&& f, ChangePolicy policy,
                             Rng& rng) {
  if (k_max < 1) throw UsageError("basic_vns needs k_max >= 1");
  if (time_limit_s <= 0.0) throw UsageError("basic_vns needs a positive time limit");
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  VnsState<Solution> state;
  state.incumbent_value = f(initial);
  state.incumbent = std::move(initial);
  state.neighborhood_index = 1;
  while (elapsed() <= time_limit_s) {
    Solution shaken =
        shake(state.incumbent, state.neighborhood_index, shake_neighborhoods, shake_weights, rng);
    Solution improved = best_improvement_local_search(std::move(shaken), improve_neighborhood, f);
    const double f_improved = f(improved);
    auto out = policy == ChangePolicy::sequential
                   ? neighborhood_change_sequential(std::move(state.incumbent),
                                                    state.incumbent_value, std::move(improved),
                                                    f_improved, state.neighborhood_index)
                   : neighborhood_change_cyclic(std::move(state.incumbent), state.incumbent_value,
                                                std::move(improved), f_improved,
                                                state.neighborhood_index);
    state.incumbent = std::move(out.solution);
    state.incumbent_value = out.value;
    state.neighborhood_index = out.next_index > k_max ? 1 : out.next_index;
  }
  return state;
}

}  // namespace vnsclust::vns
