// drod — natural-neighbor dual-scoring outlier detection.
//
// Subcommands:
//   detect  score a CSV dataset and write ranked outlier scores
//   eval    compare a score file against ground-truth labels (AUC etc.)
//   synth   inject scatterlier/clusterlier outliers into a base dataset
//   bench   time the detector over an (n, d) grid and fit a log-log slope
//
// Exit codes: 0 success, 1 runtime/data error, 2 usage error.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drod/data_io.hpp"
#include "drod/detector.hpp"
#include "drod/errors.hpp"
#include "drod/evaluation.hpp"
#include "drod/rng.hpp"
#include "drod/synth.hpp"
#include "drod/types.hpp"
#include "json.hpp"

namespace {

using drod::DataMatrix;
using drod::LabelColumn;
using drod::Matrix;
using drod::Vector;
using json = nlohmann::ordered_json;

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

LabelColumn parse_label_col(const std::string& s) {
    if (s.empty() || s == "none") return LabelColumn::none();
    if (s == "last") return LabelColumn::last();
    return LabelColumn::named(s);
}

// ---------------------------------------------------------------- detect --

struct DetectArgs {
    std::string input;
    std::string output;
    std::string label_col = "none";
    std::string metric = "euclidean";
    double eta = 0.8;
    int rounds = 60;
    long long upper_limit = 0;
    std::string variant = "full";
    std::uint64_t seed = 42;
    bool standardize = false;
    bool normalize_lai = false;
    std::string aggregate = "sum";
};

CLI::App* add_detect(CLI::App& app, DetectArgs& a, CLI::Option** rounds_opt,
                     CLI::Option** upper_opt) {
    auto* cmd = app.add_subcommand("detect", "Score a CSV dataset for outliers");
    cmd->add_option("--input", a.input, "Input CSV (header auto-detected)")->required();
    cmd->add_option("--output", a.output, "Output score CSV (id,score,rank,inclusions)")
        ->required();
    cmd->add_option("--label-col", a.label_col,
                    "Label column to strip: none, last, or a header name")
        ->capture_default_str();
    cmd->add_option("--metric", a.metric, "Distance metric")
        ->check(CLI::IsMember({"euclidean", "mahalanobis", "chebyshev"}))
        ->capture_default_str();
    cmd->add_option("--eta", a.eta, "Sampling rate per round, in (0, 1]")
        ->capture_default_str();
    *rounds_opt = cmd->add_option("--rounds", a.rounds, "Number of sampling rounds T")
                      ->capture_default_str();
    *upper_opt = cmd->add_option("--upper-limit", a.upper_limit,
                                 "Subset size cap U (default ceil(sqrt(n)))");
    cmd->add_option("--variant", a.variant, "Scoring variant")
        ->check(CLI::IsMember({"full", "lai", "sai", "single"}))
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "Ensemble base seed")->capture_default_str();
    cmd->add_flag("--standardize", a.standardize, "Z-score features before detection");
    cmd->add_flag("--normalize-lai", a.normalize_lai,
                  "Min-max normalize the local anomaly index per round");
    cmd->add_option("--aggregate", a.aggregate, "Score accumulation across rounds")
        ->check(CLI::IsMember({"sum", "mean"}))
        ->capture_default_str();
    return cmd;
}

int run_detect(const DetectArgs& a, const CLI::Option* rounds_opt,
               const CLI::Option* upper_opt) {
    if (!(a.eta > 0.0 && a.eta <= 1.0)) return usage_error("--eta must lie in (0, 1]");
    if (a.rounds < 1) return usage_error("--rounds must be at least 1");
    if (upper_opt->count() > 0 && a.upper_limit < 1)
        return usage_error("--upper-limit must be at least 1");
    if (a.variant == "single" && rounds_opt->count() > 0 && a.rounds != 1)
        return usage_error("--variant single runs exactly one round; drop --rounds");

    drod::DetectorConfig cfg;
    cfg.eta = a.eta;
    cfg.rounds = a.rounds;
    if (upper_opt->count() > 0) cfg.upper_limit = static_cast<Eigen::Index>(a.upper_limit);
    cfg.metric_kind = a.metric == "mahalanobis" ? drod::MetricKind::mahalanobis
                      : a.metric == "chebyshev" ? drod::MetricKind::chebyshev
                                                : drod::MetricKind::euclidean;
    cfg.variant = a.variant == "lai"      ? drod::Variant::lai_only
                  : a.variant == "sai"    ? drod::Variant::sai_only
                  : a.variant == "single" ? drod::Variant::single_round
                                          : drod::Variant::full;
    cfg.seed = a.seed;
    cfg.standardize = a.standardize;
    cfg.normalize_lai = a.normalize_lai;
    cfg.aggregate =
        a.aggregate == "mean" ? drod::Aggregate::mean_by_inclusion : drod::Aggregate::sum;

    const DataMatrix data =
        drod::load_csv(a.input, parse_label_col(a.label_col), drod::sniff_header(a.input));
    drod::RunInfo info;
    const drod::ScoreVector scores = drod::detect(data, cfg, &info);
    drod::write_scores(a.output, scores, data.ids);

    std::cerr << "detect: n=" << data.n() << " d=" << data.dim() << " rounds="
              << info.rounds_run << "+" << info.rounds_skipped << " skipped, lambda=["
              << info.lambda_min << "," << info.lambda_max << "] subsets=["
              << info.subsets_min << "," << info.subsets_max << "] -> " << a.output << "\n";
    return 0;
}

// ------------------------------------------------------------------ eval --

struct EvalArgs {
    std::string scores;
    std::string input;
    std::string label_col = "last";
    std::string output;
    long long s = -1;
    bool dbi = false;
    int k = 2;
    std::uint64_t seed = 42;
};

CLI::App* add_eval(CLI::App& app, EvalArgs& a, CLI::Option** s_opt) {
    auto* cmd = app.add_subcommand("eval", "Evaluate a score file against labels");
    cmd->add_option("--scores", a.scores, "Score CSV produced by detect")->required();
    cmd->add_option("--input", a.input, "Labeled dataset CSV")->required();
    cmd->add_option("--label-col", a.label_col,
                    "Label column: last or a header name")
        ->capture_default_str();
    *s_opt = cmd->add_option("--s", a.s, "Cutoff for Precision-s (default: label sum)");
    cmd->add_flag("--dbi", a.dbi,
                  "Also report Davies-Bouldin before/after removing the top s");
    cmd->add_option("--k", a.k, "Cluster count for --dbi")->capture_default_str();
    cmd->add_option("--seed", a.seed, "k-means seed for --dbi")->capture_default_str();
    cmd->add_option("--output", a.output, "Write the JSON report here instead of stdout");
    return cmd;
}

// Scores keyed by sample id, in id order. Every id in [0, n) must appear
// exactly once.
std::vector<double> read_scores_by_id(const std::string& path, Eigen::Index n) {
    std::ifstream in(path);
    if (!in) throw drod::IoError("cannot open " + path);
    std::vector<double> scores(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::string line;
    const bool header = drod::sniff_header(path);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || (header && row == 1)) continue;
        std::istringstream cells(line);
        std::string id_cell, score_cell;
        if (!std::getline(cells, id_cell, ',') || !std::getline(cells, score_cell, ','))
            throw drod::ParseError(row, 1, "score rows need at least id,score");
        long long id = -1;
        auto [ip, iec] = std::from_chars(id_cell.data(), id_cell.data() + id_cell.size(), id);
        if (iec != std::errc{} || ip != id_cell.data() + id_cell.size() || id < 0 || id >= n)
            throw drod::ParseError(row, 1, "bad sample id '" + id_cell + "'");
        double value = 0.0;
        auto [sp, sec] =
            std::from_chars(score_cell.data(), score_cell.data() + score_cell.size(), value);
        if (sec != std::errc{} || sp != score_cell.data() + score_cell.size() ||
            !std::isfinite(value))
            throw drod::ParseError(row, 2, "bad score '" + score_cell + "'");
        if (seen[static_cast<std::size_t>(id)])
            throw drod::ParseError(row, 1, "duplicate sample id " + std::to_string(id));
        seen[static_cast<std::size_t>(id)] = 1;
        scores[static_cast<std::size_t>(id)] = value;
    }
    for (Eigen::Index i = 0; i < n; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            throw drod::IoError(path + " is missing a score for id " + std::to_string(i));
    return scores;
}

int run_eval(const EvalArgs& a, const CLI::Option* s_opt) {
    if (a.label_col == "none") return usage_error("eval needs labels; --label-col none");
    if (s_opt->count() > 0 && a.s < 1) return usage_error("--s must be at least 1");
    if (a.dbi && a.k < 2) return usage_error("--dbi needs --k of at least 2");

    const DataMatrix data =
        drod::load_csv(a.input, parse_label_col(a.label_col), drod::sniff_header(a.input));
    if (!data.labels) throw drod::IoError(a.input + " has no label column");
    const std::vector<double> scores = read_scores_by_id(a.scores, data.n());

    const auto label_sum = static_cast<Eigen::Index>(
        std::count(data.labels->begin(), data.labels->end(), 1));
    const Eigen::Index s_used = s_opt->count() > 0 ? static_cast<Eigen::Index>(a.s) : label_sum;

    json report;
    report["auc"] = drod::auc(scores, *data.labels);
    report["precision_s"] = drod::precision_at_s(scores, *data.labels, s_used);
    report["s"] = s_used;
    if (a.dbi) {
        const drod::DbiDelta delta =
            drod::remove_top_s_and_cluster(data.values, scores, s_used, a.k, a.seed);
        report["dbi_before"] = delta.before;
        report["dbi_after"] = delta.after;
    }

    const std::string text = report.dump() + "\n";
    if (a.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(a.output);
        if (!out) throw drod::IoError("cannot write " + a.output);
        out << text;
    }
    return 0;
}

// ----------------------------------------------------------------- synth --

struct SynthArgs {
    std::string input;
    std::string spec;
    std::string output;
    std::uint64_t seed = 0;
    bool force = false;
};

CLI::App* add_synth(CLI::App& app, SynthArgs& a, CLI::Option** seed_opt) {
    auto* cmd = app.add_subcommand("synth", "Inject synthetic outliers into a base CSV");
    cmd->add_option("--input", a.input, "Base dataset CSV (features only)")->required();
    cmd->add_option("--spec", a.spec, "Outlier spec JSON")->required();
    cmd->add_option("--output", a.output, "Labeled output CSV")->required();
    *seed_opt = cmd->add_option("--seed", a.seed, "Override the seed in the spec");
    cmd->add_flag("--force", a.force, "Allow micro-clusters above the 10% cap");
    return cmd;
}

drod::SynthSpec parse_synth_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw drod::IoError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw drod::ParseError(0, 0, std::string("spec JSON: ") + e.what());
    }

    drod::SynthSpec spec;
    try {
        spec.scatterliers = j.value("scatterliers", std::int64_t{0});
        spec.seed = j.value("seed", std::uint64_t{0});
        for (const auto& c : j.value("clusterliers", json::array())) {
            drod::ClusterlierSpec cl;
            cl.size = c.at("size").get<std::int64_t>();
            const auto mean = c.at("mean").get<std::vector<double>>();
            const auto stddev = c.at("stddev").get<std::vector<double>>();
            cl.mean = Eigen::Map<const Vector>(mean.data(), static_cast<Eigen::Index>(mean.size()));
            cl.stddev =
                Eigen::Map<const Vector>(stddev.data(), static_cast<Eigen::Index>(stddev.size()));
            spec.clusterliers.push_back(std::move(cl));
        }
    } catch (const json::exception& e) {
        throw drod::ParseError(0, 0, std::string("spec JSON: ") + e.what());
    }
    return spec;
}

int run_synth(const SynthArgs& a, const CLI::Option* seed_opt) {
    const DataMatrix base =
        drod::load_csv(a.input, LabelColumn::none(), drod::sniff_header(a.input));
    drod::SynthSpec spec = parse_synth_spec(a.spec);
    if (seed_opt->count() > 0) spec.seed = a.seed;

    const drod::SynthDataset ds = drod::generate(base, spec, a.force);
    drod::write_csv(a.output, ds.values, &ds.labels, /*header=*/true);

    const auto injected = std::count(ds.labels.begin(), ds.labels.end(), 1);
    std::cerr << "synth: " << base.n() << " base + " << injected << " injected -> "
              << ds.values.rows() << " rows in " << a.output << "\n";
    return 0;
}

// ----------------------------------------------------------------- bench --

struct BenchArgs {
    std::vector<long long> n_grid{1000, 2000, 4000, 8000};
    std::vector<long long> d_grid{36};
    int rounds = 10;
    double eta = 0.8;
    std::uint64_t seed = 42;
    std::string output;
};

CLI::App* add_bench(CLI::App& app, BenchArgs& a) {
    auto* cmd = app.add_subcommand("bench", "Time the detector over an (n, d) grid");
    cmd->add_option("--n", a.n_grid, "Sample counts (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--d", a.d_grid, "Dimensionalities (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--rounds", a.rounds, "Sampling rounds T per timing")
        ->capture_default_str();
    cmd->add_option("--eta", a.eta, "Sampling rate")->capture_default_str();
    cmd->add_option("--seed", a.seed, "Data and ensemble seed")->capture_default_str();
    cmd->add_option("--output", a.output, "Write the timing CSV here instead of stdout");
    return cmd;
}

// Four Gaussian blobs whose per-dimension spread decays geometrically, the
// way correlated tabular features do: most variance lives in a handful of
// directions. Isotropic high-dimensional noise would instead concentrate all
// pairwise distances and turn every spatial query into a full scan, which
// benchmarks the curse of dimensionality rather than the detector.
// Four clusters with per-dimension extents that decay geometrically, the
// shape of real tabular data: many attributes, few that carry most of the
// variation. Isotropic noise in 36 dimensions would time distance
// concentration instead of the detector. Extents are uniform boxes rather
// than gaussians so the widest gap between a sample and its neighbors stays
// bounded as n grows — unbounded tails would inflate the adaptive scope on
// large rounds and measure tail depth, not scaling.
Matrix bench_dataset(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
    drod::Rng rng(seed);
    constexpr Eigen::Index kBlobs = 4;
    Matrix centers(kBlobs, d);
    for (Eigen::Index b = 0; b < kBlobs; ++b)
        for (Eigen::Index k = 0; k < d; ++k) centers(b, k) = rng.uniform(0.0, 100.0);
    Matrix out(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index b = i % kBlobs;
        for (Eigen::Index k = 0; k < d; ++k) {
            const double half = std::max(10.0 * std::pow(0.7, static_cast<double>(k)), 0.1);
            out(i, k) = centers(b, k) + rng.uniform(-half, half);
        }
    }
    return out;
}

double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = std::log(xs[i]);
        const double y = std::log(std::max(ys[i], 1e-9));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int run_bench(const BenchArgs& a) {
    if (a.n_grid.empty() || a.d_grid.empty()) return usage_error("empty --n or --d grid");
    for (const long long n : a.n_grid)
        if (n < 4) return usage_error("--n entries must be at least 4");
    for (const long long d : a.d_grid)
        if (d < 1) return usage_error("--d entries must be at least 1");
    if (a.rounds < 1) return usage_error("--rounds must be at least 1");
    if (!(a.eta > 0.0 && a.eta <= 1.0)) return usage_error("--eta must lie in (0, 1]");

    std::ostringstream csv;
    csv << "n,d,seconds\n";
    std::vector<double> ns, ds, times;
    std::uint64_t grid_index = 0;
    for (const long long d : a.d_grid) {
        for (const long long n : a.n_grid) {
            const Matrix pts = bench_dataset(n, d, drod::mix_seed(a.seed, ++grid_index));
            drod::DetectorConfig cfg;
            cfg.eta = a.eta;
            cfg.rounds = a.rounds;
            cfg.seed = a.seed;
            const auto before = std::chrono::steady_clock::now();
            drod::detect(DataMatrix(pts), cfg);
            const std::chrono::duration<double> elapsed =
                std::chrono::steady_clock::now() - before;
            char row[96];
            std::snprintf(row, sizeof row, "%lld,%lld,%.6f\n", n, d, elapsed.count());
            csv << row;
            std::cerr << "bench: " << row;
            ns.push_back(static_cast<double>(n));
            ds.push_back(static_cast<double>(d));
            times.push_back(elapsed.count());
        }
    }

    // A slope is meaningful only when exactly one axis varies.
    std::optional<double> slope;
    if (a.n_grid.size() >= 2 && a.d_grid.size() == 1)
        slope = fitted_slope(ns, times);
    else if (a.d_grid.size() >= 2 && a.n_grid.size() == 1)
        slope = fitted_slope(ds, times);

    if (a.output.empty()) {
        std::cout << csv.str();
        if (slope) std::cerr << "loglog_slope=" << *slope << "\n";
    } else {
        std::ofstream out(a.output);
        if (!out) throw drod::IoError("cannot write " + a.output);
        out << csv.str();
        if (slope) std::cout << "loglog_slope=" << *slope << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Natural-neighbor dual-scoring outlier detection"};
    app.require_subcommand(1);

    DetectArgs detect_args;
    CLI::Option* rounds_opt = nullptr;
    CLI::Option* upper_opt = nullptr;
    const CLI::App* detect_cmd = add_detect(app, detect_args, &rounds_opt, &upper_opt);

    EvalArgs eval_args;
    CLI::Option* s_opt = nullptr;
    const CLI::App* eval_cmd = add_eval(app, eval_args, &s_opt);

    SynthArgs synth_args;
    CLI::Option* synth_seed_opt = nullptr;
    const CLI::App* synth_cmd = add_synth(app, synth_args, &synth_seed_opt);

    BenchArgs bench_args;
    const CLI::App* bench_cmd = add_bench(app, bench_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*detect_cmd) return run_detect(detect_args, rounds_opt, upper_opt);
        if (*eval_cmd) return run_eval(eval_args, s_opt);
        if (*synth_cmd) return run_synth(synth_args, synth_seed_opt);
        if (*bench_cmd) return run_bench(bench_args);
    } catch (const drod::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
