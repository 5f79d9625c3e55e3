#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "vnsclust/big_vns.hpp"
#include "vnsclust/metrics.hpp"
#include "vnsclust/synthetic.hpp"

namespace py = pybind11;
using namespace vnsclust;

namespace {

using DArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

DataMatrix to_matrix(const DArray& array) {
  if (array.ndim() != 2) throw UsageError("expected a 2-d array of points");
  const auto rows = static_cast<index_t>(array.shape(0));
  const auto cols = static_cast<int>(array.shape(1));
  std::vector<double> values(array.data(), array.data() + rows * cols);
  return DataMatrix(rows, cols, std::move(values));
}

CentroidSet to_centroids(const DArray& array) {
  if (array.ndim() != 2) throw UsageError("expected a 2-d array of centroids");
  const int k = static_cast<int>(array.shape(0));
  const int dim = static_cast<int>(array.shape(1));
  CentroidSet out(k, dim);
  for (int j = 0; j < k; ++j) {
    out.set_point(j, std::span<const double>(array.data() + static_cast<std::size_t>(j) * dim,
                                             static_cast<std::size_t>(dim)));
  }
  return out;
}

py::array centroids_to_numpy(const CentroidSet& centroids) {
  const int k = centroids.size();
  const int dim = centroids.dim();
  py::array_t<double> out({k, dim});
  auto view = out.mutable_unchecked<2>();
  for (int j = 0; j < k; ++j) {
    if (centroids.is_degenerate(j)) throw UsageError("degenerate slot in result centroids");
    const auto p = centroids.point(j);
    for (int d = 0; d < dim; ++d) view(j, d) = p[static_cast<std::size_t>(d)];
  }
  return out;
}

py::array labels_to_numpy(const Assignment& labels) {
  py::array_t<int> out(static_cast<py::ssize_t>(labels.size()));
  std::memcpy(out.mutable_data(), labels.data(), labels.size() * sizeof(int));
  return out;
}

LloydParams make_lloyd(int max_iters, double rel_tol, int candidates) {
  return LloydParams{max_iters, rel_tol, candidates};
}

py::dict result_to_dict(const ClusteringResult& result, bool with_trace) {
  py::dict out;
  out["centroids"] = centroids_to_numpy(result.centroids);
  out["labels"] = labels_to_numpy(result.labels);
  out["objective"] = result.objective;
  out["iterations"] = result.iterations;
  out["elapsed_s"] = result.elapsed_s;
  if (with_trace) {
    py::list trace;
    for (const auto& rec : result.trace) {
      py::dict e;
      e["sample_objective"] = rec.sample_objective;
      e["accepted"] = rec.accepted;
      e["p"] = rec.shaking_power;
      e["changed_slots"] = rec.changed_slots;
      e["degenerate_before"] = rec.degenerate_before;
      trace.append(std::move(e));
    }
    out["trace"] = std::move(trace);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(vnsclust, m) {
  m.doc() = "Minimum sum-of-squares clustering with sample-based VNS search";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ClusteringFailureError>(m, "ClusteringFailure", PyExc_RuntimeError);

  m.def(
      "big_vns_clust",
      [](const DArray& data, int k, std::int64_t sample_size, double time_limit, int p_max,
         std::uint64_t seed, bool baseline, std::int64_t max_iterations, int lloyd_max_iters,
         double lloyd_rel_tol, int candidates, bool with_trace) {
        const DataMatrix matrix = to_matrix(data);
        BigVnsParams params;
        params.k = k;
        params.sample_size = sample_size;
        params.p_max = p_max;
        params.time_limit_s = time_limit;
        params.seed = seed;
        params.baseline_mode = baseline;
        params.max_iterations = max_iterations;
        params.lloyd = make_lloyd(lloyd_max_iters, lloyd_rel_tol, candidates);
        return result_to_dict(big_vns_clust(matrix, params), with_trace);
      },
      py::arg("data"), py::arg("k"), py::arg("sample_size"), py::arg("time_limit"),
      py::arg("p_max") = 3, py::arg("seed") = 0, py::arg("baseline") = false,
      py::arg("max_iterations") = 0, py::arg("lloyd_max_iters") = 300,
      py::arg("lloyd_rel_tol") = 1e-4, py::arg("candidates") = 3, py::arg("with_trace") = false,
      "Sample-based VNS clustering; returns a dict with centroids, labels, objective, "
      "iterations, elapsed_s and optionally the iteration trace.");

  m.def(
      "big_means",
      [](const DArray& data, int k, std::int64_t sample_size, double time_limit,
         std::uint64_t seed, std::int64_t max_iterations, int lloyd_max_iters,
         double lloyd_rel_tol, int candidates, bool with_trace) {
        const DataMatrix matrix = to_matrix(data);
        BigVnsParams params;
        params.k = k;
        params.sample_size = sample_size;
        params.p_max = 1;
        params.time_limit_s = time_limit;
        params.seed = seed;
        params.baseline_mode = true;
        params.max_iterations = max_iterations;
        params.lloyd = make_lloyd(lloyd_max_iters, lloyd_rel_tol, candidates);
        return result_to_dict(big_vns_clust(matrix, params), with_trace);
      },
      py::arg("data"), py::arg("k"), py::arg("sample_size"), py::arg("time_limit"),
      py::arg("seed") = 0, py::arg("max_iterations") = 0, py::arg("lloyd_max_iters") = 300,
      py::arg("lloyd_rel_tol") = 1e-4, py::arg("candidates") = 3, py::arg("with_trace") = false,
      "Degenerate-repair-only baseline of big_vns_clust.");

  m.def(
      "kmeans_full",
      [](const DArray& data, int k, std::uint64_t seed, int lloyd_max_iters, double lloyd_rel_tol,
         int candidates) {
        const DataMatrix matrix = to_matrix(data);
        return result_to_dict(
            kmeans_full(matrix, k, make_lloyd(lloyd_max_iters, lloyd_rel_tol, candidates), seed),
            false);
      },
      py::arg("data"), py::arg("k"), py::arg("seed") = 0, py::arg("lloyd_max_iters") = 300,
      py::arg("lloyd_rel_tol") = 1e-4, py::arg("candidates") = 3,
      "Greedy seeding plus full-data descent (the non-sampling baseline).");

  m.def(
      "kmeans_full_init",
      [](const DArray& data, const DArray& init, int lloyd_max_iters, double lloyd_rel_tol,
         int candidates) {
        const DataMatrix matrix = to_matrix(data);
        return result_to_dict(kmeans_full(matrix, to_centroids(init),
                                          make_lloyd(lloyd_max_iters, lloyd_rel_tol, candidates)),
                              false);
      },
      py::arg("data"), py::arg("init"), py::arg("lloyd_max_iters") = 300,
      py::arg("lloyd_rel_tol") = 1e-4, py::arg("candidates") = 3,
      "Full-data descent from caller-supplied initial centroids.");

  m.def(
      "assign_points",
      [](const DArray& data, const DArray& centroids) {
        const DataMatrix matrix = to_matrix(data);
        const CentroidSet c = to_centroids(centroids);
        AssignResult res = assign_points(DataView(matrix), c);
        return py::make_tuple(labels_to_numpy(res.labels), res.objective);
      },
      py::arg("data"), py::arg("centroids"),
      "Nearest-centroid labels and the summed squared distances.");

  m.def(
      "objective",
      [](const DArray& data, const DArray& centroids) {
        const DataMatrix matrix = to_matrix(data);
        return objective(DataView(matrix), to_centroids(centroids));
      },
      py::arg("data"), py::arg("centroids"),
      "Sum of squared distances to the nearest centroid.");

  m.def(
      "generate_gaussian_mixture",
      [](const std::vector<std::int64_t>& counts, const DArray& means,
         const std::vector<double>& sigmas, std::uint64_t seed) {
        if (means.ndim() != 2) throw UsageError("means must be a 2-d array");
        const auto components = static_cast<std::size_t>(means.shape(0));
        if (counts.size() != components || sigmas.size() != components) {
          throw UsageError("counts, means and sigmas must have matching lengths");
        }
        MixtureSpec spec;
        spec.dim = static_cast<int>(means.shape(1));
        for (std::size_t c = 0; c < components; ++c) {
          MixtureComponent comp;
          comp.count = counts[c];
          comp.sigma = sigmas[c];
          const double* row = means.data() + c * static_cast<std::size_t>(spec.dim);
          comp.mean.assign(row, row + spec.dim);
          spec.components.push_back(std::move(comp));
        }
        const DataMatrix data = generate_gaussian_mixture(spec, seed);
        py::array_t<double> out({data.rows(), static_cast<index_t>(data.cols())});
        std::memcpy(out.mutable_data(), data.values().data(),
                    data.values().size() * sizeof(double));
        return out;
      },
      py::arg("counts"), py::arg("means"), py::arg("sigmas"), py::arg("seed") = 0,
      "Isotropic gaussian mixture sample, rows grouped by component.");

  m.def("relative_error", &relative_error, py::arg("f"), py::arg("f_star"),
        "Percent above the reference objective (negative when better).");
}
