// Python bindings for the core detector, evaluation, and generation APIs.
// Matrices cross the boundary as numpy arrays (copied into Eigen), results
// come back as plain dicts so the python side needs no wrapper types.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "drod/detector.hpp"
#include "drod/errors.hpp"
#include "drod/evaluation.hpp"
#include "drod/natural_neighbors.hpp"
#include "drod/synth.hpp"
#include "drod/types.hpp"

namespace py = pybind11;

namespace {

drod::MetricKind parse_metric(const std::string& name) {
    if (name == "euclidean") return drod::MetricKind::euclidean;
    if (name == "mahalanobis") return drod::MetricKind::mahalanobis;
    if (name == "chebyshev") return drod::MetricKind::chebyshev;
    throw drod::Error("unknown metric '" + name + "'");
}

drod::Variant parse_variant(const std::string& name) {
    if (name == "full") return drod::Variant::full;
    if (name == "lai") return drod::Variant::lai_only;
    if (name == "sai") return drod::Variant::sai_only;
    if (name == "single") return drod::Variant::single_round;
    throw drod::Error("unknown variant '" + name + "'");
}

drod::Aggregate parse_aggregate(const std::string& name) {
    if (name == "sum") return drod::Aggregate::sum;
    if (name == "mean") return drod::Aggregate::mean_by_inclusion;
    throw drod::Error("unknown aggregate '" + name + "'");
}

py::dict detect_py(const drod::Matrix& values, double eta, int rounds,
                   std::optional<Eigen::Index> upper_limit, const std::string& metric,
                   const std::string& variant, std::uint64_t seed, bool standardize,
                   bool normalize_lai, const std::string& aggregate) {
    drod::DetectorConfig cfg;
    cfg.eta = eta;
    cfg.rounds = rounds;
    cfg.upper_limit = upper_limit;
    cfg.metric_kind = parse_metric(metric);
    cfg.variant = parse_variant(variant);
    cfg.seed = seed;
    cfg.standardize = standardize;
    cfg.normalize_lai = normalize_lai;
    cfg.aggregate = parse_aggregate(aggregate);

    drod::RunInfo info;
    drod::ScoreVector result;
    {
        py::gil_scoped_release release;
        result = drod::detect(drod::DataMatrix(values), cfg, &info);
    }

    py::dict out;
    out["scores"] = py::cast(result.scores);
    out["inclusions"] = py::cast(result.inclusions);
    out["rounds_run"] = info.rounds_run;
    out["rounds_skipped"] = info.rounds_skipped;
    out["lambda_range"] = py::make_tuple(info.lambda_min, info.lambda_max);
    out["subsets_range"] = py::make_tuple(info.subsets_min, info.subsets_max);
    return out;
}

py::dict natural_neighbors_py(const drod::Matrix& values, const std::string& metric) {
    const drod::DataMatrix data(values);
    const drod::Metric m = drod::prepare_metric(data, parse_metric(metric));
    const drod::NeighborGraph graph = drod::search_natural_neighbors(data, m);
    py::dict out;
    out["lambda"] = graph.lambda;
    out["neighbors"] = py::cast(graph.nb_lists);
    out["counts"] = py::cast(graph.nb_counts);
    return out;
}

py::dict kmeans_py(const drod::Matrix& values, int k, std::uint64_t seed) {
    const drod::KMeansResult r = drod::kmeans(values, k, seed);
    py::dict out;
    out["labels"] = py::cast(r.labels);
    out["centers"] = r.centers;
    out["inertia"] = r.inertia;
    out["iterations"] = r.iterations;
    return out;
}

py::dict remove_top_s_py(const drod::Matrix& values, const std::vector<double>& scores,
                         Eigen::Index s, int k, std::uint64_t seed) {
    const drod::DbiDelta delta = drod::remove_top_s_and_cluster(values, scores, s, k, seed);
    py::dict out;
    out["before"] = delta.before;
    out["after"] = delta.after;
    return out;
}

// Clusterlier specs arrive as (size, mean, stddev) tuples, mirroring the
// CLI's JSON spec entries.
using ClusterlierTuple = std::tuple<Eigen::Index, drod::Vector, drod::Vector>;

py::dict generate_py(const drod::Matrix& base, Eigen::Index scatterliers,
                     const std::vector<ClusterlierTuple>& clusterliers, std::uint64_t seed,
                     bool force) {
    drod::SynthSpec spec;
    spec.scatterliers = scatterliers;
    spec.seed = seed;
    for (const auto& [size, mean, stddev] : clusterliers)
        spec.clusterliers.push_back({size, mean, stddev});
    const drod::SynthDataset set = drod::generate(drod::DataMatrix(base), spec, force);
    py::dict out;
    out["values"] = set.values;
    out["labels"] = py::cast(set.labels);
    out["provenance"] = py::cast(set.provenance);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Density-gap outlier detection on natural-neighbor graphs";

    py::register_exception<drod::Error>(m, "DrodError", PyExc_ValueError);

    m.def("detect", &detect_py, py::arg("values"), py::kw_only(), py::arg("eta") = 0.8,
          py::arg("rounds") = 60, py::arg("upper_limit") = std::nullopt,
          py::arg("metric") = "euclidean", py::arg("variant") = "full", py::arg("seed") = 42,
          py::arg("standardize") = false, py::arg("normalize_lai") = false,
          py::arg("aggregate") = "sum",
          "Run the subsampling ensemble detector; returns scores, inclusion counts, "
          "and per-run diagnostics.");

    m.def("natural_neighbors", &natural_neighbors_py, py::arg("values"), py::kw_only(),
          py::arg("metric") = "euclidean",
          "Adaptive mutual-neighbor graph: per-sample neighbor lists, counts, and the "
          "final search scope.");

    m.def("auc", &drod::auc, py::arg("scores"), py::arg("labels"),
          "Area under the ROC curve of scores against binary labels (ties averaged).");

    m.def(
        "precision_at_s",
        [](const std::vector<double>& scores, const std::vector<int>& labels,
           std::optional<Eigen::Index> s) { return drod::precision_at_s(scores, labels, s); },
        py::arg("scores"), py::arg("labels"), py::arg("s") = std::nullopt,
        "Fraction of true outliers within the s highest scores (s defaults to the "
        "number of labeled outliers).");

    m.def("kmeans", &kmeans_py, py::arg("values"), py::arg("k"), py::kw_only(),
          py::arg("seed") = 42, "Seeded k-means++ clustering.");

    m.def("dbi", &drod::dbi, py::arg("values"), py::arg("labels"),
          "Davies-Bouldin index of a clustering.");

    m.def("remove_top_s_and_cluster", &remove_top_s_py, py::arg("values"), py::arg("scores"),
          py::arg("s"), py::kw_only(), py::arg("k") = 2, py::arg("seed") = 42,
          "Cluster with and without the s highest-scored rows; returns both "
          "Davies-Bouldin indices.");

    m.def("generate", &generate_py, py::arg("base"), py::kw_only(),
          py::arg("scatterliers") = Eigen::Index{0},
          py::arg("clusterliers") = std::vector<ClusterlierTuple>{}, py::arg("seed") = 0,
          py::arg("force") = false,
          "Inject synthetic outliers into a base sample: uniform scatterliers plus "
          "Gaussian micro-clusters given as (size, mean, stddev) tuples.");
}
