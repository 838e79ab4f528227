#include "drod/subsets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "drod/errors.hpp"

namespace drod {

std::vector<double> local_density(const NeighborGraph& graph, const SpatialIndex& index) {
    if (graph.n != index.size()) throw DimensionMismatch("graph and index sizes differ");

    const Eigen::Index n = graph.n;
    const Eigen::Index d = index.dim();
    double delta = 0.0;  // computed lazily; only coincident neighborhoods need it

    std::vector<double> rho(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& nbs = graph.nb_lists[static_cast<std::size_t>(i)];
        if (nbs.empty()) continue;
        double sum = 0.0;
        for (const Eigen::Index j : nbs) {
            const double key = detail::rank_key(index.point(i), index.point(j), d, index.linf());
            sum += detail::key_to_distance(key, index.linf());
        }
        if (sum <= 0.0) {
            if (delta == 0.0) {
                Matrix pts(n, d);
                for (Eigen::Index p = 0; p < n; ++p)
                    for (Eigen::Index c = 0; c < d; ++c) pts(p, c) = index.point(p)[c];
                delta = delta_guard(pts, index.linf());
            }
            sum = delta;
        }
        rho[static_cast<std::size_t>(i)] = static_cast<double>(nbs.size()) / sum;
    }
    return rho;
}

SubsetPartition explore_subsets(const NeighborGraph& graph, const std::vector<double>& rho,
                                Eigen::Index upper_limit) {
    const Eigen::Index n = graph.n;
    if (static_cast<Eigen::Index>(rho.size()) != n)
        throw DimensionMismatch("density vector does not match graph size");
    if (upper_limit < 1) throw DegenerateInput("upper limit must be positive");

    SubsetPartition part;
    part.upper_limit = upper_limit;
    part.assignment.assign(static_cast<std::size_t>(n), -1);

    // Seeds in descending density, ties by ascending id; zero-density samples
    // never seed a grown subset and are materialized as singletons below.
    std::vector<Eigen::Index> by_density(static_cast<std::size_t>(n));
    std::iota(by_density.begin(), by_density.end(), Eigen::Index{0});
    std::sort(by_density.begin(), by_density.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double ra = rho[static_cast<std::size_t>(a)];
        const double rb = rho[static_cast<std::size_t>(b)];
        return ra != rb ? ra > rb : a < b;
    });

    for (const Eigen::Index seed : by_density) {
        if (rho[static_cast<std::size_t>(seed)] <= 0.0) break;  // sorted: only zeros remain
        if (part.assignment[static_cast<std::size_t>(seed)] >= 0) continue;

        const Eigen::Index m = part.size();
        std::vector<Eigen::Index> members{seed};
        part.assignment[static_cast<std::size_t>(seed)] = m;

        // Scan members in insertion order; absorb each one's unassigned
        // natural neighbors as a batch; stop growing once size reaches U.
        std::size_t scan = 0;
        while (scan < members.size() &&
               static_cast<Eigen::Index>(members.size()) < upper_limit) {
            const Eigen::Index host = members[scan++];
            for (const Eigen::Index nb : graph.nb_lists[static_cast<std::size_t>(host)]) {
                if (part.assignment[static_cast<std::size_t>(nb)] >= 0) continue;
                part.assignment[static_cast<std::size_t>(nb)] = m;
                members.push_back(nb);
            }
        }
        double peak = 0.0;
        for (const Eigen::Index id : members)
            peak = std::max(peak, rho[static_cast<std::size_t>(id)]);
        part.subsets.push_back(std::move(members));
        part.peak_density.push_back(peak);
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        if (part.assignment[static_cast<std::size_t>(i)] >= 0) continue;
        part.assignment[static_cast<std::size_t>(i)] = part.size();
        part.subsets.push_back({i});
        part.peak_density.push_back(rho[static_cast<std::size_t>(i)]);
    }
    return part;
}

Eigen::Index default_upper_limit(Eigen::Index n) {
    if (n < 1) throw DegenerateInput("sample count must be positive");
    Eigen::Index u = static_cast<Eigen::Index>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (u * u < n) ++u;            // guard against downward fp rounding
    while (u > 1 && (u - 1) * (u - 1) >= n) --u;
    return u;
}

void write_partition(const std::string& path, const SubsetPartition& partition) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "sample_id,subset_id\n";
    for (std::size_t i = 0; i < partition.assignment.size(); ++i)
        out << i << ',' << partition.assignment[i] << '\n';
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace drod
