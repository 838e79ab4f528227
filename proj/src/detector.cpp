#include "drod/detector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "drod/data_io.hpp"
#include "drod/errors.hpp"
#include "drod/kdtree.hpp"
#include "drod/natural_neighbors.hpp"
#include "drod/rng.hpp"
#include "drod/scoring.hpp"
#include "drod/subsets.hpp"

namespace drod {

DetectorConfig validated(const DetectorConfig& config) {
    DetectorConfig c = config;
    if (!(c.eta > 0.0 && c.eta <= 1.0)) throw Error("eta must lie in (0, 1]");
    if (c.rounds < 1) throw Error("rounds must be positive");
    if (c.upper_limit && *c.upper_limit < 1) throw Error("upper limit must be positive");
    if (c.variant == Variant::single_round) {
        c.rounds = 1;
        c.eta = 1.0;
    }
    return c;
}

std::vector<Eigen::Index> sample_round(Eigen::Index n, double eta, std::uint64_t round_seed) {
    if (!(eta > 0.0 && eta <= 1.0)) throw Error("eta must lie in (0, 1]");
    // ⌈eta·n⌉ with a little forgiveness for values like 0.8·10 that land an
    // ulp above the integer they represent.
    auto s = static_cast<Eigen::Index>(std::ceil(eta * static_cast<double>(n) - 1e-9));
    s = std::clamp<Eigen::Index>(s, 1, n);
    if (s == n) {
        std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), Eigen::Index{0});
        return all;
    }

    // Partial Fisher-Yates: the first s slots become the sample.
    std::vector<Eigen::Index> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), Eigen::Index{0});
    Rng rng(round_seed);
    for (Eigen::Index i = 0; i < s; ++i) {
        const auto j = i + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(s));
    std::sort(pool.begin(), pool.end());
    return pool;
}

namespace {

void minmax_normalize(std::vector<double>& v) {
    if (v.empty()) return;
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    const double span = *mx - *mn;
    if (span <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        return;
    }
    const double lo = *mn;
    for (double& x : v) x = (x - lo) / span;
}

}  // namespace

std::vector<double> run_round(const Matrix& frame_rows, bool use_linf,
                              const DetectorConfig& config, RunInfo* info) {
    if (frame_rows.rows() < 2) throw DegenerateInput("a round needs at least 2 samples");

    const SpatialIndex index(frame_rows, use_linf);
    const NeighborGraph graph = search_natural_neighbors(index);
    const std::vector<double> rho = local_density(graph, index);
    const Eigen::Index upper =
        config.upper_limit ? *config.upper_limit : default_upper_limit(frame_rows.rows());
    const SubsetPartition partition = explore_subsets(graph, rho, upper);

    if (info) {
        if (info->rounds_run == 0) {
            info->lambda_min = info->lambda_max = graph.lambda;
            info->subsets_min = info->subsets_max = partition.size();
        } else {
            info->lambda_min = std::min(info->lambda_min, graph.lambda);
            info->lambda_max = std::max(info->lambda_max, graph.lambda);
            info->subsets_min = std::min(info->subsets_min, partition.size());
            info->subsets_max = std::max(info->subsets_max, partition.size());
        }
        ++info->rounds_run;
    }

    std::vector<double> lai = compute_lai(partition, rho);
    if (config.normalize_lai) minmax_normalize(lai);
    if (config.variant == Variant::lai_only) return lai;

    const SubsetScores scores = compute_sai(partition, graph, frame_rows, use_linf);
    if (config.variant == Variant::sai_only) {
        std::vector<double> out(static_cast<std::size_t>(frame_rows.rows()));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = scores.sai[static_cast<std::size_t>(partition.assignment[i])];
        return out;
    }
    return compute_dai(lai, scores, partition);
}

ScoreVector detect(const DataMatrix& data, const DetectorConfig& config, RunInfo* info) {
    const DetectorConfig cfg = validated(config);
    const Eigen::Index n = data.n();
    if (n < 2) throw DegenerateInput("detect needs at least 2 samples");

    DataMatrix working = data;
    if (cfg.standardize) {
        StandardizationSpec spec;
        spec.mode = StandardizationSpec::Mode::zscore;
        working = standardize(data, spec);
    }
    const Metric metric = prepare_metric(working, cfg.metric_kind);
    const Matrix frame = working_frame(working.values, metric);

    ScoreVector result;
    result.scores.assign(static_cast<std::size_t>(n), 0.0);
    result.inclusions.assign(static_cast<std::size_t>(n), 0);

    RunInfo local;
    RunInfo* stats = info ? info : &local;
    for (int t = 1; t <= cfg.rounds; ++t) {
        const std::vector<Eigen::Index> sample =
            sample_round(n, cfg.eta, mix_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        if (sample.size() < 2) {
            ++stats->rounds_skipped;
            continue;
        }
        Matrix rows(static_cast<Eigen::Index>(sample.size()), frame.cols());
        for (std::size_t p = 0; p < sample.size(); ++p)
            rows.row(static_cast<Eigen::Index>(p)) = frame.row(sample[p]);

        const std::vector<double> round_scores = run_round(rows, metric.linf(), cfg, stats);
        for (std::size_t p = 0; p < sample.size(); ++p) {
            const auto id = static_cast<std::size_t>(sample[p]);
            result.scores[id] += round_scores[p];
            ++result.inclusions[id];
        }
    }
    if (stats->rounds_run == 0) throw AllRoundsDegenerate("every sampling round was skipped");

    if (cfg.aggregate == Aggregate::mean_by_inclusion) {
        for (std::size_t i = 0; i < result.scores.size(); ++i)
            if (result.inclusions[i] > 0)
                result.scores[i] /= static_cast<double>(result.inclusions[i]);
    }
    return result;
}

}  // namespace drod
