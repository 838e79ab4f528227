#include "drod/metric.hpp"

#include <Eigen/Cholesky>

#include "drod/errors.hpp"

namespace drod {

Metric prepare_metric(const DataMatrix& data, MetricKind kind) {
    Metric m;
    m.kind = kind;
    if (kind != MetricKind::mahalanobis) return m;

    const Eigen::Index n = data.n();
    const Eigen::Index d = data.dim();
    if (n < 2) throw DegenerateInput("mahalanobis needs at least 2 samples");

    const Matrix centered = data.values.rowwise() - data.values.colwise().mean();
    Matrix cov = (centered.transpose() * centered) / static_cast<double>(n);
    const double ridge = 1e-6 * (cov.trace() / static_cast<double>(d));
    cov.diagonal().array() += ridge > 0.0 ? ridge : 1e-6;

    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success)
        throw SingularCovariance("covariance not positive definite after regularization");
    // W = L⁻¹ (lower triangular): ‖W(a−b)‖² = (a−b)ᵀ C⁻¹ (a−b).
    m.whitening = Matrix(llt.matrixL())
                      .triangularView<Eigen::Lower>()
                      .solve(Matrix::Identity(d, d));
    return m;
}

Matrix working_frame(const Matrix& values, const Metric& m) {
    if (m.kind != MetricKind::mahalanobis) return values;
    if (m.whitening.cols() != values.cols())
        throw DimensionMismatch("whitening prepared for a different dimensionality");
    return values * m.whitening.transpose();
}

double distance(const Vector& a, const Vector& b, const Metric& m) {
    if (a.size() != b.size()) throw DimensionMismatch("point dimensions differ");
    if (m.kind == MetricKind::mahalanobis) {
        if (m.whitening.cols() != a.size())
            throw DimensionMismatch("whitening prepared for a different dimensionality");
        const Vector wa = m.whitening * a;
        const Vector wb = m.whitening * b;
        return std::sqrt(detail::sq_l2(wa.data(), wb.data(), wa.size()));
    }
    if (m.kind == MetricKind::chebyshev) return detail::linf(a.data(), b.data(), a.size());
    return std::sqrt(detail::sq_l2(a.data(), b.data(), a.size()));
}

double frame_distance(const Matrix& frame, Eigen::Index i, Eigen::Index j, bool use_linf) {
    const Eigen::Index d = frame.cols();
    // Rows of a column-major matrix are strided; copy through contiguous
    // buffers so the kernels see the same layout everywhere.
    Vector a = frame.row(i);
    Vector b = frame.row(j);
    const double key = detail::rank_key(a.data(), b.data(), d, use_linf);
    return detail::key_to_distance(key, use_linf);
}

double delta_guard(const Matrix& frame, bool use_linf) {
    if (frame.rows() == 0) return 1e-12;
    Vector lo = frame.colwise().minCoeff();
    Vector hi = frame.colwise().maxCoeff();
    const double key = detail::rank_key(lo.data(), hi.data(), lo.size(), use_linf);
    const double diameter = detail::key_to_distance(key, use_linf);
    return diameter > 0.0 ? 1e-12 * diameter : 1e-12;
}

}  // namespace drod
