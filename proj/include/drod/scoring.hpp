#pragma once

#include <string>
#include <vector>

#include "drod/metric.hpp"
#include "drod/natural_neighbors.hpp"
#include "drod/subsets.hpp"
#include "drod/types.hpp"

namespace drod {

/// Per-subset quantities feeding the subset anomaly index.
struct SubsetScores {
    Matrix centers;                 // m×d subset means (working frame)
    std::vector<double> ls_total;   // summed link strength to all other subsets
    std::vector<double> sai;        // 1 − minmax(ls_total), all-zero when degenerate
};

/// Local anomaly index: density gap to the subset's density peak.
std::vector<double> compute_lai(const SubsetPartition& partition, const std::vector<double>& rho);

/// Per-subset coordinate means of `values` rows.
Matrix subset_centers(const SubsetPartition& partition, const Matrix& values);

/// Link strength between two subsets: the number of cross-subset
/// natural-neighbor pairs divided by the distance between subset centers.
/// Zero when no cross pairs exist; coincident centers fall back to `delta`.
double link_strength(Eigen::Index m, Eigen::Index w, const SubsetPartition& partition,
                     const NeighborGraph& graph, const Matrix& centers, bool use_linf,
                     double delta);

/// Subset anomaly index for every subset: centers, total link strengths, and
/// sai = 1 − minmax(ls_total). Degenerate normalization (single subset or
/// all-equal totals) yields sai = 0 everywhere.
SubsetScores compute_sai(const SubsetPartition& partition, const NeighborGraph& graph,
                         const Matrix& frame_values, bool use_linf);

/// Dual anomaly index per sample: sai·(1 + lai) with the sample's subset sai.
std::vector<double> compute_dai(const std::vector<double>& lai, const SubsetScores& scores,
                                const SubsetPartition& partition);

/// Debug dump: `subset_id,size,ls_total,sai` per subset.
void write_subset_scores(const std::string& path, const SubsetPartition& partition,
                         const SubsetScores& scores);

}  // namespace drod
