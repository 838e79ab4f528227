#pragma once

#include <string>
#include <vector>

#include "drod/kdtree.hpp"
#include "drod/natural_neighbors.hpp"
#include "drod/types.hpp"

namespace drod {

/// A disjoint cover of the samples by natural-neighbor reference subsets.
struct SubsetPartition {
    std::vector<std::vector<Eigen::Index>> subsets;  // members in insertion order
    std::vector<Eigen::Index> assignment;            // sample id → subset index
    std::vector<double> peak_density;                // max rho per subset
    Eigen::Index upper_limit = 1;

    Eigen::Index size() const { return static_cast<Eigen::Index>(subsets.size()); }
};

/// Local density per sample: |NB(x_i)| divided by the summed metric distance
/// to its natural neighbors; 0 for samples without neighbors. A coincident
/// neighborhood (zero distance sum) falls back to |NB| / delta so duplicates
/// become finite density peaks.
std::vector<double> local_density(const NeighborGraph& graph, const SpatialIndex& index);

/// Greedy subset exploration: repeatedly seed with the densest unassigned
/// sample, then absorb members' unassigned natural neighbors in insertion
/// order, batch by batch, while the subset is still smaller than U. Samples
/// with zero density end up as singleton subsets.
SubsetPartition explore_subsets(const NeighborGraph& graph, const std::vector<double>& rho,
                                Eigen::Index upper_limit);

/// Default subset size cap: ⌈√n⌉.
Eigen::Index default_upper_limit(Eigen::Index n);

/// Debug dump: `sample_id,subset_id` per row, ascending sample id.
void write_partition(const std::string& path, const SubsetPartition& partition);

}  // namespace drod
