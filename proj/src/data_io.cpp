#include "drod/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "drod/errors.hpp"

namespace drod {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!trim(line).empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace

bool sniff_header(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) return false;
    double v;
    for (const auto& cell : split_line(lines.front()))
        if (!parse_real(cell, v)) return true;
    return false;
}

DataMatrix load_csv(const std::string& path, const LabelColumn& label, bool has_header) {
    auto lines = read_lines(path);
    std::vector<std::string> header_cells;
    if (has_header) {
        if (lines.empty()) throw EmptyDataset("no rows in " + path);
        header_cells = split_line(lines.front());
        lines.erase(lines.begin());
    }
    if (lines.empty()) throw EmptyDataset("no data rows in " + path);

    const auto first = split_line(lines.front());
    const std::size_t ncols = first.size();
    if (ncols == 0) throw EmptyDataset("no columns in " + path);

    std::size_t label_col = ncols;  // ncols = no label
    switch (label.kind) {
        case LabelColumn::Kind::none:
            break;
        case LabelColumn::Kind::last:
            label_col = ncols - 1;
            break;
        case LabelColumn::Kind::named: {
            if (!has_header)
                throw IoError("label column '" + label.name + "' requested but file has no header");
            auto it = std::find_if(header_cells.begin(), header_cells.end(),
                                   [&](const std::string& c) { return trim(c) == label.name; });
            if (it == header_cells.end())
                throw IoError("label column '" + label.name + "' not found in header");
            label_col = static_cast<std::size_t>(it - header_cells.begin());
            break;
        }
    }
    const bool has_label = label_col < ncols;
    if (has_label && ncols < 2) throw EmptyDataset("label column leaves no features");

    const std::size_t n = lines.size();
    const std::size_t d = ncols - (has_label ? 1 : 0);
    Matrix values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    std::vector<int> labels;
    if (has_label) labels.reserve(n);

    for (std::size_t r = 0; r < n; ++r) {
        const auto cells = split_line(lines[r]);
        const std::size_t file_row = r + (has_header ? 2 : 1);  // 1-based, incl. header
        if (cells.size() != ncols)
            throw ParseError(file_row, cells.size(),
                             "expected " + std::to_string(ncols) + " columns, got " +
                                 std::to_string(cells.size()));
        std::size_t c_out = 0;
        for (std::size_t c = 0; c < ncols; ++c) {
            double v;
            if (!parse_real(cells[c], v))
                throw ParseError(file_row, c + 1, "'" + trim(cells[c]) + "' is not a finite real");
            if (c == label_col) {
                if (v != 0.0 && v != 1.0) throw NonBinaryLabel(file_row);
                labels.push_back(static_cast<int>(v));
            } else {
                values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c_out++)) = v;
            }
        }
    }

    DataMatrix out(std::move(values));
    if (has_label) out.labels = std::move(labels);
    return out;
}

DataMatrix standardize(const DataMatrix& data, StandardizationSpec& spec) {
    if (spec.mode == StandardizationSpec::Mode::none) return data;

    const Eigen::Index n = data.n();
    const Eigen::Index d = data.dim();
    spec.mean = data.values.colwise().mean();
    spec.stddev = Vector(d);
    DataMatrix out = data;
    for (Eigen::Index c = 0; c < d; ++c) {
        double ss = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
            const double dv = data.values(r, c) - spec.mean(c);
            ss += dv * dv;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n));
        spec.stddev(c) = sd;
        for (Eigen::Index r = 0; r < n; ++r)
            out.values(r, c) = sd > 0.0 ? (data.values(r, c) - spec.mean(c)) / sd : 0.0;
    }
    return out;
}

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_scores(const std::string& path, const ScoreVector& scores,
                  const std::vector<std::int64_t>& ids) {
    if (scores.scores.size() != ids.size())
        throw DimensionMismatch("score/id length mismatch");
    const std::size_t n = ids.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores.scores[a] != scores.scores[b]) return scores.scores[a] > scores.scores[b];
        return ids[a] < ids[b];
    });

    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "id,score,rank,inclusions\n";
    for (std::size_t rank = 0; rank < n; ++rank) {
        const std::size_t i = order[rank];
        const int inc = i < scores.inclusions.size() ? scores.inclusions[i] : 0;
        out << ids[i] << ',' << format_real(scores.scores[i]) << ',' << rank + 1 << ',' << inc
            << '\n';
    }
    if (!out) throw IoError("write failed for " + path);
}

void write_csv(const std::string& path, const Matrix& values, const std::vector<int>* labels,
               bool header) {
    if (labels && static_cast<Eigen::Index>(labels->size()) != values.rows())
        throw DimensionMismatch("label/value length mismatch");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    if (header) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            if (c) out << ',';
            out << 'f' << c;
        }
        if (labels) out << ",label";
        out << '\n';
    }
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            if (c) out << ',';
            out << format_real(values(r, c));
        }
        if (labels) out << ',' << (*labels)[static_cast<std::size_t>(r)];
        out << '\n';
    }
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace drod
