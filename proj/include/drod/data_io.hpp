#pragma once

#include <string>

#include "drod/types.hpp"

namespace drod {

/// Which CSV column, if any, holds the binary outlier label.
struct LabelColumn {
    enum class Kind { none, last, named };
    Kind kind = Kind::none;
    std::string name;  // only meaningful for Kind::named

    static LabelColumn none() { return {Kind::none, {}}; }
    static LabelColumn last() { return {Kind::last, {}}; }
    static LabelColumn named(std::string n) { return {Kind::named, std::move(n)}; }
};

struct StandardizationSpec {
    enum class Mode { none, zscore };
    Mode mode = Mode::none;
    // Filled in by standardize() when mode == zscore.
    Vector mean;
    Vector stddev;
};

/// Heuristic: does the first line of the file look like a header row?
/// True when any cell of the first line fails to parse as a real number.
bool sniff_header(const std::string& path);

/// Parse a CSV of reals into a DataMatrix. The label column (when requested)
/// is stripped from values and must contain only 0/1. Row order is preserved
/// and ids default to 0..n-1.
DataMatrix load_csv(const std::string& path, const LabelColumn& label = LabelColumn::none(),
                    bool has_header = false);

/// Z-score per feature (population standard deviation); zero-variance
/// features map to all-zeros. mode == none is the identity. The fitted
/// mean/stddev are written back into `spec`.
DataMatrix standardize(const DataMatrix& data, StandardizationSpec& spec);

/// Write `id,score,rank,inclusions` rows, rank 1 = highest score, ties
/// broken by ascending id. Scores printed at full round-trip precision.
void write_scores(const std::string& path, const ScoreVector& scores,
                  const std::vector<std::int64_t>& ids);

/// Write a plain feature CSV, optionally with a trailing binary label column.
void write_csv(const std::string& path, const Matrix& values,
               const std::vector<int>* labels = nullptr, bool header = false);

}  // namespace drod
