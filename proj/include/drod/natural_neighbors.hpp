#pragma once

#include <string>
#include <vector>

#include "drod/kdtree.hpp"
#include "drod/types.hpp"

namespace drod {

/// The natural-neighbor graph: the mutual-kNN graph at the adaptive scope
/// lambda found by the expanding fixpoint search. Symmetric, no self-loops.
struct NeighborGraph {
    Eigen::Index n = 0;
    std::vector<std::vector<Eigen::Index>> nb_lists;  // per sample, sorted ascending
    std::vector<Eigen::Index> nb_counts;              // |NB(x_i)| == nb_lists[i].size()
    Eigen::Index lambda = 0;

    bool has_edge(Eigen::Index i, Eigen::Index j) const {
        const auto& row = nb_lists[static_cast<std::size_t>(i)];
        return std::binary_search(row.begin(), row.end(), j);
    }
};

/// Expanding mutual-kNN search: starting from r = 1, mark an edge (i, j)
/// whenever each point is among the other's r nearest neighbors; stop once
/// every sample has a neighbor or the count of neighborless samples stops
/// shrinking. lambda is the final r (capped at n−1).
NeighborGraph search_natural_neighbors(const SpatialIndex& index);

/// Convenience overload building the index internally.
NeighborGraph search_natural_neighbors(const DataMatrix& data, const Metric& m);

/// Debug dump: one `i,j` line per undirected edge, i < j, sorted.
void write_edge_list(const std::string& path, const NeighborGraph& graph);

}  // namespace drod
