#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace drod {

using Matrix = Eigen::MatrixXd;  // rows are samples, columns are features
using Vector = Eigen::VectorXd;

/// A loaded dataset: n samples x d features, optional binary outlier labels
/// (1 = outlier) and per-sample identifiers (default 0..n-1).
struct DataMatrix {
    Matrix values;
    std::optional<std::vector<int>> labels;
    std::vector<std::int64_t> ids;

    DataMatrix() = default;
    explicit DataMatrix(Matrix v, std::optional<std::vector<int>> l = std::nullopt)
        : values(std::move(v)), labels(std::move(l)) {
        ids.resize(static_cast<std::size_t>(values.rows()));
        std::iota(ids.begin(), ids.end(), std::int64_t{0});
    }

    Eigen::Index n() const { return values.rows(); }
    Eigen::Index dim() const { return values.cols(); }
};

/// Accumulated per-sample anomaly scores plus the number of sampling rounds
/// each sample was included in.
struct ScoreVector {
    std::vector<double> scores;
    std::vector<int> inclusions;
};

}  // namespace drod
