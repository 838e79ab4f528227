#pragma once

#include <vector>

#include "drod/metric.hpp"
#include "drod/types.hpp"

namespace drod {

/// Exact k-nearest-neighbor index over a fixed point set in the metric's
/// working frame (L2 or L∞). A k-d tree with median splits on the widest
/// dimension; small inputs degrade gracefully to a near-linear scan through
/// leaf nodes. Results are exact and deterministic: neighbors are ordered by
/// (distance, id) with ties broken by ascending id.
class SpatialIndex {
public:
    SpatialIndex(const Matrix& frame_points, bool use_linf);

    Eigen::Index size() const { return n_; }
    Eigen::Index dim() const { return d_; }
    bool linf() const { return linf_; }

    /// The k nearest neighbors of a stored point, excluding the point itself.
    /// Requires 1 ≤ k ≤ n−1 (KTooLarge otherwise).
    std::vector<Eigen::Index> query_knn(Eigen::Index sample_id, Eigen::Index k) const;

    /// As above but also reports the metric distances (ascending).
    void query_knn(Eigen::Index sample_id, Eigen::Index k, std::vector<Eigen::Index>& ids,
                   std::vector<double>& dists) const;

    /// Working-frame metric distance between two stored points.
    double point_distance(Eigen::Index i, Eigen::Index j) const;

    const double* point(Eigen::Index i) const { return coords_.data() + i * d_; }

private:
    struct Node {
        Eigen::Index lo, hi;        // index range into perm_
        Eigen::Index split_dim;     // -1 for leaves
        double split_val;
        Eigen::Index left, right;   // children, -1 for leaves
    };

    struct Scratch;  // per-thread query state, defined in the .cpp

    Eigen::Index build(Eigen::Index lo, Eigen::Index hi);
    void search(Eigen::Index node_id, double gap_key, Scratch& st) const;

    Eigen::Index n_ = 0;
    Eigen::Index d_ = 0;
    bool linf_ = false;
    std::vector<double> coords_;       // row-major n×d, original id order
    std::vector<Eigen::Index> perm_;   // leaf ordering of point ids
    std::vector<double> leaf_coords_;  // coords_ permuted into leaf order
    std::vector<Node> nodes_;
    Eigen::Index root_ = -1;
};

/// Build an index over data under metric m (whitening applied here).
SpatialIndex build_index(const DataMatrix& data, const Metric& m);

inline std::vector<Eigen::Index> query_knn(const SpatialIndex& index, Eigen::Index sample_id,
                                           Eigen::Index k) {
    return index.query_knn(sample_id, k);
}

}  // namespace drod
