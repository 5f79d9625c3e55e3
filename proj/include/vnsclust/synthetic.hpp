#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vnsclust/core.hpp"

namespace vnsclust {

struct MixtureComponent {
  index_t count = 0;
  std::vector<double> mean;
  double sigma = 0.0;  // isotropic, per coordinate
};

struct MixtureSpec {
  std::string name;
  int dim = 0;
  std::vector<MixtureComponent> components;
  std::uint64_t seed = 0;  // default generation seed, overridable by callers
};

// Draws count_i points from an isotropic gaussian around each component mean,
// in component order, deterministically for a given seed.
DataMatrix generate_gaussian_mixture(const MixtureSpec& spec, std::uint64_t seed);

// Reads a mixture description from a flat key-value file:
//   name = x1
//   dim = 2
//   seed = 7
//   component = 3000 0.2 0.5 0.15   # count, mean (dim values), sigma
MixtureSpec load_mixture_spec(const std::string& path);

}  // namespace vnsclust
