#include "drod/scoring.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "drod/errors.hpp"

namespace drod {

std::vector<double> compute_lai(const SubsetPartition& partition,
                                const std::vector<double>& rho) {
    const std::size_t n = partition.assignment.size();
    if (rho.size() != n) throw DimensionMismatch("density vector does not match partition");
    std::vector<double> lai(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto m = static_cast<std::size_t>(partition.assignment[i]);
        lai[i] = partition.peak_density[m] - rho[i];
    }
    return lai;
}

Matrix subset_centers(const SubsetPartition& partition, const Matrix& values) {
    const Eigen::Index m = partition.size();
    Matrix centers(m, values.cols());
    for (Eigen::Index s = 0; s < m; ++s) {
        const auto& members = partition.subsets[static_cast<std::size_t>(s)];
        Vector sum = Vector::Zero(values.cols());
        for (const Eigen::Index id : members) sum += values.row(id).transpose();
        centers.row(s) = sum / static_cast<double>(members.size());
    }
    return centers;
}

namespace {

double center_distance(const Matrix& centers, Eigen::Index a, Eigen::Index b, bool use_linf) {
    const Vector va = centers.row(a);
    const Vector vb = centers.row(b);
    const double key = detail::rank_key(va.data(), vb.data(), va.size(), use_linf);
    return detail::key_to_distance(key, use_linf);
}

// Count cross-subset natural-neighbor pairs for every subset pair that has
// any. Ordered keys keep the downstream accumulation order deterministic.
using PairCounts = std::map<std::pair<Eigen::Index, Eigen::Index>, Eigen::Index>;

PairCounts count_cross_pairs(const SubsetPartition& partition, const NeighborGraph& graph) {
    PairCounts nbp;
    for (Eigen::Index i = 0; i < graph.n; ++i) {
        for (const Eigen::Index j : graph.nb_lists[static_cast<std::size_t>(i)]) {
            if (j <= i) continue;  // count each undirected pair once
            const Eigen::Index a = partition.assignment[static_cast<std::size_t>(i)];
            const Eigen::Index b = partition.assignment[static_cast<std::size_t>(j)];
            if (a == b) continue;
            ++nbp[{std::min(a, b), std::max(a, b)}];
        }
    }
    return nbp;
}

}  // namespace

double link_strength(Eigen::Index m, Eigen::Index w, const SubsetPartition& partition,
                     const NeighborGraph& graph, const Matrix& centers, bool use_linf,
                     double delta) {
    if (m == w) throw DegenerateInput("link strength needs two distinct subsets");
    Eigen::Index nbp = 0;
    for (const Eigen::Index i : partition.subsets[static_cast<std::size_t>(m)])
        for (const Eigen::Index j : partition.subsets[static_cast<std::size_t>(w)])
            if (graph.has_edge(i, j)) ++nbp;
    if (nbp == 0) return 0.0;
    double dist = center_distance(centers, m, w, use_linf);
    if (dist <= 0.0) dist = delta;
    return static_cast<double>(nbp) / dist;
}

SubsetScores compute_sai(const SubsetPartition& partition, const NeighborGraph& graph,
                         const Matrix& frame_values, bool use_linf) {
    const Eigen::Index m = partition.size();
    SubsetScores out;
    out.centers = subset_centers(partition, frame_values);
    out.ls_total.assign(static_cast<std::size_t>(m), 0.0);

    const PairCounts nbp = count_cross_pairs(partition, graph);
    double delta = 0.0;
    for (const auto& [key, pairs] : nbp) {
        const auto [a, b] = key;
        double dist = center_distance(out.centers, a, b, use_linf);
        if (dist <= 0.0) {
            if (delta == 0.0) delta = delta_guard(frame_values, use_linf);
            dist = delta;
        }
        const double ls = static_cast<double>(pairs) / dist;
        out.ls_total[static_cast<std::size_t>(a)] += ls;
        out.ls_total[static_cast<std::size_t>(b)] += ls;
    }

    out.sai.assign(static_cast<std::size_t>(m), 0.0);
    if (m > 1) {
        const auto [mn, mx] = std::minmax_element(out.ls_total.begin(), out.ls_total.end());
        if (*mx > *mn) {
            const double span = *mx - *mn;
            for (Eigen::Index s = 0; s < m; ++s)
                out.sai[static_cast<std::size_t>(s)] =
                    1.0 - (out.ls_total[static_cast<std::size_t>(s)] - *mn) / span;
        }
    }
    return out;
}

std::vector<double> compute_dai(const std::vector<double>& lai, const SubsetScores& scores,
                                const SubsetPartition& partition) {
    const std::size_t n = partition.assignment.size();
    if (lai.size() != n) throw DimensionMismatch("lai vector does not match partition");
    std::vector<double> dai(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto m = static_cast<std::size_t>(partition.assignment[i]);
        dai[i] = scores.sai[m] * (1.0 + lai[i]);
    }
    return dai;
}

void write_subset_scores(const std::string& path, const SubsetPartition& partition,
                         const SubsetScores& scores) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "subset_id,size,ls_total,sai\n";
    for (Eigen::Index s = 0; s < partition.size(); ++s) {
        out << s << ',' << partition.subsets[static_cast<std::size_t>(s)].size() << ','
            << scores.ls_total[static_cast<std::size_t>(s)] << ','
            << scores.sai[static_cast<std::size_t>(s)] << '\n';
    }
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace drod
