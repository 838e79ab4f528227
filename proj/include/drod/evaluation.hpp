#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "drod/types.hpp"

namespace drod {

/// Area under the ROC curve via the rank-statistic formulation: the
/// probability that a random outlier outscores a random inlier, ties
/// counting one half (average ranks). Requires both classes present.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

/// Fraction of true outliers among the top-s scores (ties broken by
/// ascending id); s defaults to the ground-truth outlier count.
double precision_at_s(const std::vector<double>& scores, const std::vector<int>& labels,
                      std::optional<Eigen::Index> s = std::nullopt);

struct KMeansResult {
    std::vector<int> labels;
    Matrix centers;
    double inertia = 0.0;
    int iterations = 0;
};

/// Seeded k-means++ initialization followed by Lloyd's iterations (at most
/// 300); empty clusters are reseeded to the point farthest from its center.
KMeansResult kmeans(const Matrix& data, int k, std::uint64_t seed);

/// Davies-Bouldin index over a hard clustering (Euclidean); lower is better.
double dbi(const Matrix& data, const std::vector<int>& cluster_labels);

struct DbiDelta {
    double before = 0.0;
    double after = 0.0;
};

/// Cluster the data with and without its s highest-scored rows and report
/// both Davies-Bouldin indices.
DbiDelta remove_top_s_and_cluster(const Matrix& data, const std::vector<double>& scores,
                                  Eigen::Index s, int k, std::uint64_t seed);

}  // namespace drod
