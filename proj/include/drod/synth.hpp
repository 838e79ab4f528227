#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "drod/types.hpp"

namespace drod {

/// One anomalous micro-cluster: `size` draws from a diagonal Gaussian.
struct ClusterlierSpec {
    Eigen::Index size = 0;
    Vector mean;
    Vector stddev;
};

struct SynthSpec {
    Eigen::Index scatterliers = 0;
    std::vector<ClusterlierSpec> clusterliers;
    std::uint64_t seed = 0;
};

/// Row provenance in an assembled synthetic dataset: base rows are 0,
/// scatterliers are -1, clusterlier rows carry 1 + their spec index.
struct SynthDataset {
    Matrix values;
    std::vector<int> labels;      // 1 = injected
    std::vector<int> provenance;  // 0 base, -1 scatterlier, 1+i clusterlier spec i
};

/// Per-dimension scatterlier range: mean ± 1.5·range with
/// range = max(|max − mean|, |mean − min|).
std::pair<Vector, Vector> scatterlier_bounds(const DataMatrix& base);

/// `count` uniform draws inside scatterlier_bounds(base), one dimension at a
/// time; deterministic per seed.
Matrix generate_scatterliers(const DataMatrix& base, Eigen::Index count, std::uint64_t seed);

/// Draw every spec's micro-cluster. Each spec may hold at most 10% of
/// `total_n` (the assembled dataset size) unless `force` is set.
/// spec_of_row, when given, receives each generated row's spec index.
Matrix generate_clusterliers(const std::vector<ClusterlierSpec>& specs, Eigen::Index total_n,
                             std::uint64_t seed, bool force = false,
                             std::vector<int>* spec_of_row = nullptr);

/// Concatenate base + scatterliers + clusterliers with labels/provenance.
SynthDataset assemble(const DataMatrix& base, const Matrix& scatterliers,
                      const Matrix& clusterliers, const std::vector<int>& cluster_spec_of_row);

/// Drive the whole pipeline from one spec.
SynthDataset generate(const DataMatrix& base, const SynthSpec& spec, bool force = false);

}  // namespace drod
