#pragma once

#include <stdexcept>
#include <string>

namespace vnsclust {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The caller violated an operation's contract (bad sizes, ranges, flags).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input data could not be ingested (CSV parse problems and the like).
class DataError : public Error {
 public:
  using Error::Error;
};

// A centroid set with no usable slot was passed where one is required.
class InvalidSolutionError : public Error {
 public:
  using Error::Error;
};

// Every sample point coincides with an already placed center, so the
// seeding distribution is undefined. Callers usually retry with a fresh sample.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

// The sample cannot provide the requested number of distinct centers.
class SeedingError : public Error {
 public:
  using Error::Error;
};

// A shake neighborhood was empty.
class ShakingError : public Error {
 public:
  using Error::Error;
};

// Aggregation input did not cover every expected (dataset, k, algorithm) cell.
class AggregationError : public Error {
 public:
  using Error::Error;
};

// A clustering run could not produce a valid solution (e.g. persistent
// degenerate samples while repairing empty slots).
class ClusteringFailureError : public Error {
 public:
  using Error::Error;
};

}  // namespace vnsclust
