#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "drod/metric.hpp"
#include "drod/types.hpp"

namespace drod {

enum class Variant { full, lai_only, sai_only, single_round };
enum class Aggregate { sum, mean_by_inclusion };

struct DetectorConfig {
    double eta = 0.8;
    int rounds = 60;
    std::optional<Eigen::Index> upper_limit;  // default ⌈√(round size)⌉
    MetricKind metric_kind = MetricKind::euclidean;
    Variant variant = Variant::full;
    std::uint64_t seed = 42;
    bool standardize = false;
    bool normalize_lai = false;
    Aggregate aggregate = Aggregate::sum;
};

/// Per-run diagnostics accumulated across rounds.
struct RunInfo {
    int rounds_run = 0;
    int rounds_skipped = 0;
    Eigen::Index lambda_min = 0;
    Eigen::Index lambda_max = 0;
    Eigen::Index subsets_min = 0;
    Eigen::Index subsets_max = 0;
};

/// Validate ranges and normalize the config (single_round pins rounds = 1,
/// eta = 1). Throws Error on out-of-range values.
DetectorConfig validated(const DetectorConfig& config);

/// Uniform random subset of ⌈eta·n⌉ distinct sample ids (ascending),
/// deterministic for a given round seed.
std::vector<Eigen::Index> sample_round(Eigen::Index n, double eta, std::uint64_t round_seed);

/// One pipeline pass over a sampled dataset already mapped into the metric's
/// working frame: neighbor graph → densities → subsets → dual scores.
/// Returns one score per input row, per the configured variant.
std::vector<double> run_round(const Matrix& frame_rows, bool use_linf,
                              const DetectorConfig& config, RunInfo* info = nullptr);

/// Full detector: T sampling rounds at rate eta with per-round seeds derived
/// from config.seed, scores accumulated per sample (sum, or mean over
/// inclusion counts).
ScoreVector detect(const DataMatrix& data, const DetectorConfig& config,
                   RunInfo* info = nullptr);

}  // namespace drod
