#pragma once

#include <cmath>

#include "drod/types.hpp"

namespace drod {

enum class MetricKind { euclidean, mahalanobis, chebyshev };

/// A prepared distance metric. Mahalanobis carries a lower-triangular
/// whitening transform W with Wᵀ·W equal to the regularized inverse
/// covariance of the dataset it was prepared on, so that the Mahalanobis
/// distance is the plain L2 distance between whitened points.
struct Metric {
    MetricKind kind = MetricKind::euclidean;
    Matrix whitening;  // d×d, mahalanobis only

    bool linf() const { return kind == MetricKind::chebyshev; }
};

/// Build a Metric for this dataset. Mahalanobis computes the covariance over
/// the FULL dataset (population normalization), regularizes it as
/// C + 1e-6·(trace(C)/d)·I, and Cholesky-factors the result.
Metric prepare_metric(const DataMatrix& data, MetricKind kind);

/// Map points into the metric's working frame: identity for euclidean and
/// chebyshev, x ↦ W·x for mahalanobis. In the working frame every metric is
/// either plain L2 or, for chebyshev, L∞.
Matrix working_frame(const Matrix& values, const Metric& m);

/// Metric distance between two raw-space points.
double distance(const Vector& a, const Vector& b, const Metric& m);

namespace detail {

// Distance kernels shared by the spatial index, the density computation, and
// the brute-force test oracles. Explicit scalar loops in fixed dimension
// order so every caller computes bit-identical values.
inline double sq_l2(const double* a, const double* b, Eigen::Index d) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        const double dv = a[k] - b[k];
        s += dv * dv;
    }
    return s;
}

inline double linf(const double* a, const double* b, Eigen::Index d) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        const double dv = std::fabs(a[k] - b[k]);
        if (dv > s) s = dv;
    }
    return s;
}

// The (possibly squared) key used to order neighbors: squared L2, or plain
// L∞. Monotone in the true distance, cheaper than taking roots everywhere.
inline double rank_key(const double* a, const double* b, Eigen::Index d, bool use_linf) {
    return use_linf ? linf(a, b, d) : sq_l2(a, b, d);
}

inline double key_to_distance(double key, bool use_linf) {
    return use_linf ? key : std::sqrt(key);
}

// As rank_key, but may stop early once the running key strictly exceeds
// `bound`. The running key only grows with each dimension, so an
// early-stopped candidate's true key would exceed `bound` as well; callers
// must treat such a result as reject-only. Candidates that survive all d
// dimensions accumulate the same terms in the same order as rank_key and so
// produce bit-identical keys.
inline double sq_l2_bounded(const double* a, const double* b, Eigen::Index d, double bound) {
    double s = 0.0;
    Eigen::Index k = 0;
    while (k < d) {
        const Eigen::Index stop = std::min(d, k + 8);
        for (; k < stop; ++k) {
            const double dv = a[k] - b[k];
            s += dv * dv;
        }
        if (s > bound) return s;
    }
    return s;
}

inline double linf_bounded(const double* a, const double* b, Eigen::Index d, double bound) {
    double s = 0.0;
    Eigen::Index k = 0;
    while (k < d) {
        const Eigen::Index stop = std::min(d, k + 8);
        for (; k < stop; ++k) {
            const double dv = std::fabs(a[k] - b[k]);
            if (dv > s) s = dv;
        }
        if (s > bound) return s;
    }
    return s;
}

inline double rank_key_bounded(const double* a, const double* b, Eigen::Index d, bool use_linf,
                               double bound) {
    return use_linf ? linf_bounded(a, b, d, bound) : sq_l2_bounded(a, b, d, bound);
}

}  // namespace detail

/// Working-frame distance between rows i and j of a frame matrix.
double frame_distance(const Matrix& frame, Eigen::Index i, Eigen::Index j, bool use_linf);

/// Small positive distance floor: 1e-12 times the working-frame distance
/// between the per-dimension bounding-box corners (an upper bound on the
/// dataset diameter within 2×), or 1e-12 when the data are all coincident.
double delta_guard(const Matrix& frame, bool use_linf);

}  // namespace drod
