#include "vnsclust/synthetic.hpp"

#include <cmath>

#include "vnsclust/keyvalue.hpp"

namespace vnsclust {

DataMatrix generate_gaussian_mixture(const MixtureSpec& spec, std::uint64_t seed) {
  if (spec.dim < 1) throw UsageError("mixture dimension must be >= 1");
  if (spec.components.empty()) throw UsageError("mixture needs at least one component");
  index_t total = 0;
  for (const auto& comp : spec.components) {
    if (comp.count < 1) throw UsageError("component counts must be >= 1");
    if (static_cast<int>(comp.mean.size()) != spec.dim) {
      throw UsageError("component mean dimension mismatch");
    }
    if (!(comp.sigma > 0.0) || !std::isfinite(comp.sigma)) {
      throw UsageError("component sigma must be positive and finite");
    }
    total += comp.count;
  }

  Rng rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(total) * spec.dim);
  for (const auto& comp : spec.components) {
    for (index_t i = 0; i < comp.count; ++i) {
      for (int d = 0; d < spec.dim; ++d) {
        values.push_back(comp.mean[static_cast<std::size_t>(d)] + comp.sigma * unit(rng));
      }
    }
  }
  return DataMatrix(total, spec.dim, std::move(values));
}

MixtureSpec load_mixture_spec(const std::string& path) {
  const KeyValueFile kv = load_key_value_file(path);
  MixtureSpec spec;
  spec.name = kv.get("name", "mixture");
  spec.dim = static_cast<int>(parse_int(kv.get("dim", ""), path + ": dim"));
  spec.seed = static_cast<std::uint64_t>(parse_int(kv.get("seed", "0"), path + ": seed"));
  for (const std::string& line : kv.all("component")) {
    const std::vector<std::string> tokens = split_tokens(line);
    if (static_cast<int>(tokens.size()) != spec.dim + 2) {
      throw DataError(path + ": component needs count, " + std::to_string(spec.dim) +
                      " mean values and sigma");
    }
    MixtureComponent comp;
    comp.count = parse_int(tokens[0], path + ": component count");
    for (int d = 0; d < spec.dim; ++d) {
      comp.mean.push_back(parse_double(tokens[static_cast<std::size_t>(d) + 1],
                                       path + ": component mean"));
    }
    comp.sigma = parse_double(tokens.back(), path + ": component sigma");
    spec.components.push_back(std::move(comp));
  }
  if (spec.components.empty()) throw DataError(path + ": no component lines");
  return spec;
}

}  // namespace vnsclust
