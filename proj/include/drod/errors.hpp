#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace drod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::size_t row, std::size_t col, const std::string& detail)
        : Error("parse error at row " + std::to_string(row) + ", column " +
                std::to_string(col) + ": " + detail),
          row(row),
          col(col) {}
    std::size_t row;
    std::size_t col;
};

struct NonBinaryLabel : Error {
    explicit NonBinaryLabel(std::size_t row)
        : Error("label at row " + std::to_string(row) + " is not 0 or 1"), row(row) {}
    std::size_t row;
};

struct EmptyDataset : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct SingularCovariance : Error {
    using Error::Error;
};

struct KTooLarge : Error {
    using Error::Error;
};

struct DegenerateInput : Error {
    using Error::Error;
};

struct AllRoundsDegenerate : Error {
    using Error::Error;
};

struct SingleClass : Error {
    using Error::Error;
};

struct STooLarge : Error {
    using Error::Error;
};

struct NoOutliers : Error {
    using Error::Error;
};

struct TooFewClusters : Error {
    using Error::Error;
};

struct CapExceeded : Error {
    using Error::Error;
};

}  // namespace drod
