#include "drod/natural_neighbors.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "drod/errors.hpp"

namespace drod {

namespace {

// Per-point cache of the exact kNN prefix plus the 1-based rank of each
// cached neighbor. kNN prefixes are stable under extension (the neighbor
// order is total), so a cache can be regrown by refetching with a larger k.
struct NeighborCache {
    std::vector<Eigen::Index> ids;
    std::unordered_map<Eigen::Index, Eigen::Index> rank;

    void refill(const SpatialIndex& index, Eigen::Index self, Eigen::Index k) {
        ids = index.query_knn(self, k);
        rank.clear();
        rank.reserve(ids.size());
        for (std::size_t p = 0; p < ids.size(); ++p)
            rank.emplace(ids[p], static_cast<Eigen::Index>(p) + 1);
    }

    // Rank of `other` within the cached prefix, or 0 if beyond it.
    Eigen::Index rank_of(Eigen::Index other) const {
        const auto it = rank.find(other);
        return it == rank.end() ? 0 : it->second;
    }
};

}  // namespace

NeighborGraph search_natural_neighbors(const SpatialIndex& index) {
    const Eigen::Index n = index.size();
    if (n < 2) throw DegenerateInput("natural-neighbor search needs at least 2 samples");

    std::vector<NeighborCache> cache(static_cast<std::size_t>(n));
    Eigen::Index cached_k = 0;  // every cache holds at least this many

    NeighborGraph graph;
    graph.n = n;
    graph.nb_lists.resize(static_cast<std::size_t>(n));
    graph.nb_counts.assign(static_cast<std::size_t>(n), 0);

    Eigen::Index without_nb = n;
    Eigen::Index prev_without = -1;  // sentinel: no comparison at r = 1
    Eigen::Index r = 0;

    while (r < n - 1) {
        ++r;
        if (cached_k < r) {
            // Query cost is sublinear in k, so one deep fetch beats repeated
            // shallow ones: start at a depth that covers the final scope of
            // most datasets and double from there if the search outruns it.
            const Eigen::Index grow = std::min(n - 1, std::max<Eigen::Index>(2 * cached_k, 32));
            for (Eigen::Index i = 0; i < n; ++i)
                cache[static_cast<std::size_t>(i)].refill(index, i, grow);
            cached_k = grow;
        }

        // New mutual pairs at scope r: j is i's r-th neighbor and i is within
        // j's first r. When both ranks equal r the pair would be seen from
        // both endpoints; the smaller id is allowed to record it.
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Index j = cache[static_cast<std::size_t>(i)].ids[static_cast<std::size_t>(r - 1)];
            const Eigen::Index rank_back = cache[static_cast<std::size_t>(j)].rank_of(i);
            if (rank_back == 0 || rank_back > r) continue;
            if (rank_back == r && j < i) continue;  // already recorded from j
            auto& li = graph.nb_lists[static_cast<std::size_t>(i)];
            auto& lj = graph.nb_lists[static_cast<std::size_t>(j)];
            if (li.empty()) --without_nb;
            if (lj.empty()) --without_nb;
            li.push_back(j);
            lj.push_back(i);
        }

        if (without_nb == 0 || without_nb == prev_without) break;
        prev_without = without_nb;
    }

    graph.lambda = std::max<Eigen::Index>(r, 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        auto& row = graph.nb_lists[static_cast<std::size_t>(i)];
        std::sort(row.begin(), row.end());
        graph.nb_counts[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(row.size());
    }
    return graph;
}

NeighborGraph search_natural_neighbors(const DataMatrix& data, const Metric& m) {
    const SpatialIndex index = build_index(data, m);
    return search_natural_neighbors(index);
}

void write_edge_list(const std::string& path, const NeighborGraph& graph) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "i,j\n";
    for (Eigen::Index i = 0; i < graph.n; ++i)
        for (const Eigen::Index j : graph.nb_lists[static_cast<std::size_t>(i)])
            if (i < j) out << i << ',' << j << '\n';
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace drod
