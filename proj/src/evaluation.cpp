#include "drod/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "drod/errors.hpp"
#include "drod/metric.hpp"
#include "drod/rng.hpp"

namespace drod {

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw DimensionMismatch("score/label length mismatch");
    const std::size_t n = scores.size();
    const auto n_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    if (n_pos == 0 || n_pos == n)
        throw SingleClass("AUC needs both outliers and inliers in the labels");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average ranks over tie groups, then the Mann-Whitney U statistic.
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based mean rank
        for (std::size_t p = i; p < j; ++p)
            if (labels[order[p]] == 1) pos_rank_sum += avg_rank;
        i = j;
    }
    const double n1 = static_cast<double>(n_pos);
    const double n0 = static_cast<double>(n - n_pos);
    const double u = pos_rank_sum - n1 * (n1 + 1.0) / 2.0;
    return u / (n1 * n0);
}

namespace {

std::vector<std::size_t> top_s_order(const std::vector<double>& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
    });
    return order;
}

}  // namespace

double precision_at_s(const std::vector<double>& scores, const std::vector<int>& labels,
                      std::optional<Eigen::Index> s) {
    if (scores.size() != labels.size()) throw DimensionMismatch("score/label length mismatch");
    const auto n_pos = std::count(labels.begin(), labels.end(), 1);
    if (n_pos == 0) throw NoOutliers("precision-s needs at least one labeled outlier");
    const Eigen::Index s_used = s ? *s : static_cast<Eigen::Index>(n_pos);
    if (s_used < 1 || s_used > static_cast<Eigen::Index>(scores.size()))
        throw STooLarge("s must lie in [1, n]");

    const auto order = top_s_order(scores);
    Eigen::Index hits = 0;
    for (Eigen::Index p = 0; p < s_used; ++p)
        if (labels[order[static_cast<std::size_t>(p)]] == 1) ++hits;
    return static_cast<double>(hits) / static_cast<double>(s_used);
}

namespace {

double sq_row_dist(const Matrix& a, Eigen::Index i, const Matrix& b, Eigen::Index j) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
        const double dv = a(i, k) - b(j, k);
        s += dv * dv;
    }
    return s;
}

}  // namespace

KMeansResult kmeans(const Matrix& data, int k, std::uint64_t seed) {
    const Eigen::Index n = data.rows();
    if (k < 1 || static_cast<Eigen::Index>(k) > n)
        throw KTooLarge("k must lie in [1, n]");

    Rng rng(seed);
    Matrix centers(k, data.cols());
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);

    // k-means++ seeding: first center uniform, the rest D²-weighted.
    {
        const auto first = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
        centers.row(0) = data.row(first);
        chosen[static_cast<std::size_t>(first)] = 1;
        std::vector<double> d2(static_cast<std::size_t>(n));
        for (int c = 1; c < k; ++c) {
            double total = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                double best = std::numeric_limits<double>::infinity();
                for (int cc = 0; cc < c; ++cc)
                    best = std::min(best, sq_row_dist(data, i, centers, cc));
                d2[static_cast<std::size_t>(i)] = best;
                total += best;
            }
            Eigen::Index pick = -1;
            if (total > 0.0) {
                const double target = rng.next_double() * total;
                double cum = 0.0;
                for (Eigen::Index i = 0; i < n; ++i) {
                    cum += d2[static_cast<std::size_t>(i)];
                    if (cum > target) {
                        pick = i;
                        break;
                    }
                }
                if (pick < 0) pick = n - 1;  // fp slack at the tail
            } else {
                // All remaining points coincide with a center; take the
                // smallest unchosen id.
                for (Eigen::Index i = 0; i < n; ++i)
                    if (!chosen[static_cast<std::size_t>(i)]) {
                        pick = i;
                        break;
                    }
                if (pick < 0) pick = 0;
            }
            centers.row(c) = data.row(pick);
            chosen[static_cast<std::size_t>(pick)] = 1;
        }
    }

    KMeansResult result;
    result.labels.assign(static_cast<std::size_t>(n), 0);
    constexpr int kMaxIters = 300;

    for (int iter = 0; iter < kMaxIters; ++iter) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best_c = 0;
            double best_d = sq_row_dist(data, i, centers, 0);
            for (int c = 1; c < k; ++c) {
                const double d = sq_row_dist(data, i, centers, c);
                if (d < best_d) {
                    best_d = d;
                    best_c = c;
                }
            }
            if (result.labels[static_cast<std::size_t>(i)] != best_c) {
                result.labels[static_cast<std::size_t>(i)] = best_c;
                changed = true;
            }
        }

        // Reseed any empty cluster to the point farthest from its assigned
        // center (largest squared distance, ties by ascending id).
        std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
        for (const int c : result.labels) ++counts[static_cast<std::size_t>(c)];
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            Eigen::Index far_i = -1;
            double far_d = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const int ci = result.labels[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(ci)] <= 1) continue;  // keep donors nonempty
                const double d = sq_row_dist(data, i, centers, ci);
                if (d > far_d) {
                    far_d = d;
                    far_i = i;
                }
            }
            if (far_i < 0) continue;  // nothing to donate; cluster stays empty
            --counts[static_cast<std::size_t>(result.labels[static_cast<std::size_t>(far_i)])];
            result.labels[static_cast<std::size_t>(far_i)] = c;
            counts[static_cast<std::size_t>(c)] = 1;
            changed = true;
        }

        result.iterations = iter + 1;
        if (!changed && iter > 0) break;

        // Update step: centers become member means; empty clusters (only
        // possible when donation failed) keep their previous position.
        Matrix sums = Matrix::Zero(k, data.cols());
        for (Eigen::Index i = 0; i < n; ++i)
            sums.row(result.labels[static_cast<std::size_t>(i)]) += data.row(i);
        for (int c = 0; c < k; ++c)
            if (counts[static_cast<std::size_t>(c)] > 0)
                centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }

    result.centers = centers;
    result.inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        result.inertia += sq_row_dist(data, i, centers, result.labels[static_cast<std::size_t>(i)]);
    return result;
}

double dbi(const Matrix& data, const std::vector<int>& cluster_labels) {
    if (static_cast<Eigen::Index>(cluster_labels.size()) != data.rows())
        throw DimensionMismatch("cluster labels do not match data rows");
    const int k = cluster_labels.empty()
                      ? 0
                      : 1 + *std::max_element(cluster_labels.begin(), cluster_labels.end());

    std::vector<Eigen::Index> counts(static_cast<std::size_t>(std::max(k, 0)), 0);
    for (const int c : cluster_labels) {
        if (c < 0) throw DegenerateInput("negative cluster label");
        ++counts[static_cast<std::size_t>(c)];
    }
    std::vector<int> live;
    for (int c = 0; c < k; ++c)
        if (counts[static_cast<std::size_t>(c)] > 0) live.push_back(c);
    if (live.size() < 2) throw TooFewClusters("Davies-Bouldin needs at least 2 nonempty clusters");

    Matrix centroids = Matrix::Zero(static_cast<Eigen::Index>(live.size()), data.cols());
    std::vector<Eigen::Index> remap(static_cast<std::size_t>(k), -1);
    for (std::size_t c = 0; c < live.size(); ++c) remap[static_cast<std::size_t>(live[c])] = static_cast<Eigen::Index>(c);
    for (Eigen::Index i = 0; i < data.rows(); ++i)
        centroids.row(remap[static_cast<std::size_t>(cluster_labels[static_cast<std::size_t>(i)])]) += data.row(i);
    for (std::size_t c = 0; c < live.size(); ++c)
        centroids.row(static_cast<Eigen::Index>(c)) /=
            static_cast<double>(counts[static_cast<std::size_t>(live[c])]);

    std::vector<double> sigma(live.size(), 0.0);
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        const Eigen::Index c = remap[static_cast<std::size_t>(cluster_labels[static_cast<std::size_t>(i)])];
        sigma[static_cast<std::size_t>(c)] += std::sqrt(sq_row_dist(data, i, centroids, c));
    }
    for (std::size_t c = 0; c < live.size(); ++c)
        sigma[c] /= static_cast<double>(counts[static_cast<std::size_t>(live[c])]);

    const double delta = delta_guard(data, false);
    double total = 0.0;
    for (std::size_t a = 0; a < live.size(); ++a) {
        double worst = 0.0;
        for (std::size_t b = 0; b < live.size(); ++b) {
            if (a == b) continue;
            double dist = std::sqrt(sq_row_dist(centroids, static_cast<Eigen::Index>(a),
                                                centroids, static_cast<Eigen::Index>(b)));
            if (dist <= 0.0) dist = delta;
            worst = std::max(worst, (sigma[a] + sigma[b]) / dist);
        }
        total += worst;
    }
    return total / static_cast<double>(live.size());
}

DbiDelta remove_top_s_and_cluster(const Matrix& data, const std::vector<double>& scores,
                                  Eigen::Index s, int k, std::uint64_t seed) {
    if (static_cast<Eigen::Index>(scores.size()) != data.rows())
        throw DimensionMismatch("scores do not match data rows");
    if (s < 0 || s >= data.rows()) throw STooLarge("s must lie in [0, n)");

    DbiDelta delta;
    delta.before = dbi(data, kmeans(data, k, seed).labels);

    const auto order = top_s_order(scores);
    std::vector<char> removed(scores.size(), 0);
    for (Eigen::Index p = 0; p < s; ++p) removed[order[static_cast<std::size_t>(p)]] = 1;

    Matrix kept(data.rows() - s, data.cols());
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < data.rows(); ++i)
        if (!removed[static_cast<std::size_t>(i)]) kept.row(row++) = data.row(i);

    delta.after = dbi(kept, kmeans(kept, k, seed).labels);
    return delta;
}

}  // namespace drod
