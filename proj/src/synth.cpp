#include "drod/synth.hpp"

#include <algorithm>
#include <string>

#include "drod/errors.hpp"
#include "drod/rng.hpp"

namespace drod {

std::pair<Vector, Vector> scatterlier_bounds(const DataMatrix& base) {
    if (base.n() < 1) throw EmptyDataset("scatterlier bounds need a nonempty base");
    const Vector mean = base.values.colwise().mean();
    const Vector mx = base.values.colwise().maxCoeff();
    const Vector mn = base.values.colwise().minCoeff();
    Vector lo(base.dim());
    Vector hi(base.dim());
    for (Eigen::Index k = 0; k < base.dim(); ++k) {
        const double range = std::max(std::abs(mx(k) - mean(k)), std::abs(mean(k) - mn(k)));
        lo(k) = mean(k) - 1.5 * range;
        hi(k) = mean(k) + 1.5 * range;
    }
    return {lo, hi};
}

Matrix generate_scatterliers(const DataMatrix& base, Eigen::Index count, std::uint64_t seed) {
    if (count < 0) throw DegenerateInput("scatterlier count must be nonnegative");
    const auto [lo, hi] = scatterlier_bounds(base);
    Matrix out(count, base.dim());
    Rng rng(seed);
    for (Eigen::Index i = 0; i < count; ++i)
        for (Eigen::Index k = 0; k < base.dim(); ++k) out(i, k) = rng.uniform(lo(k), hi(k));
    return out;
}

Matrix generate_clusterliers(const std::vector<ClusterlierSpec>& specs, Eigen::Index total_n,
                             std::uint64_t seed, bool force, std::vector<int>* spec_of_row) {
    Eigen::Index total_rows = 0;
    Eigen::Index dim = -1;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const auto& spec = specs[s];
        if (spec.size < 1) throw DegenerateInput("clusterlier size must be positive");
        if (spec.mean.size() != spec.stddev.size() || spec.mean.size() < 1)
            throw DimensionMismatch("clusterlier mean/stddev dimensions differ");
        if (dim < 0) dim = spec.mean.size();
        if (spec.mean.size() != dim)
            throw DimensionMismatch("clusterlier specs disagree on dimensionality");
        if ((spec.stddev.array() <= 0.0).any())
            throw DegenerateInput("clusterlier stddev must be positive");
        if (!force && 10 * spec.size > total_n)
            throw CapExceeded("micro-cluster of " + std::to_string(spec.size) +
                              " exceeds 10% of " + std::to_string(total_n) + " samples");
        total_rows += spec.size;
    }

    Matrix out(total_rows, std::max<Eigen::Index>(dim, 0));
    if (spec_of_row) spec_of_row->assign(static_cast<std::size_t>(total_rows), 0);
    Eigen::Index row = 0;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const auto& spec = specs[s];
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
        for (Eigen::Index i = 0; i < spec.size; ++i, ++row) {
            for (Eigen::Index k = 0; k < dim; ++k)
                out(row, k) = rng.gaussian(spec.mean(k), spec.stddev(k));
            if (spec_of_row) (*spec_of_row)[static_cast<std::size_t>(row)] = static_cast<int>(s);
        }
    }
    return out;
}

SynthDataset assemble(const DataMatrix& base, const Matrix& scatterliers,
                      const Matrix& clusterliers, const std::vector<int>& cluster_spec_of_row) {
    const Eigen::Index d = base.dim();
    if (scatterliers.rows() > 0 && scatterliers.cols() != d)
        throw DimensionMismatch("scatterlier dimensionality differs from base");
    if (clusterliers.rows() > 0 && clusterliers.cols() != d)
        throw DimensionMismatch("clusterlier dimensionality differs from base");
    if (static_cast<Eigen::Index>(cluster_spec_of_row.size()) != clusterliers.rows())
        throw DimensionMismatch("clusterlier provenance length mismatch");

    const Eigen::Index n = base.n() + scatterliers.rows() + clusterliers.rows();
    SynthDataset out;
    out.values = Matrix(n, d);
    if (base.n() > 0) out.values.topRows(base.n()) = base.values;
    if (scatterliers.rows() > 0)
        out.values.middleRows(base.n(), scatterliers.rows()) = scatterliers;
    if (clusterliers.rows() > 0) out.values.bottomRows(clusterliers.rows()) = clusterliers;

    out.labels.assign(static_cast<std::size_t>(n), 1);
    std::fill_n(out.labels.begin(), static_cast<std::size_t>(base.n()), 0);

    out.provenance.assign(static_cast<std::size_t>(n), 0);
    for (Eigen::Index i = 0; i < scatterliers.rows(); ++i)
        out.provenance[static_cast<std::size_t>(base.n() + i)] = -1;
    for (Eigen::Index i = 0; i < clusterliers.rows(); ++i)
        out.provenance[static_cast<std::size_t>(base.n() + scatterliers.rows() + i)] =
            1 + cluster_spec_of_row[static_cast<std::size_t>(i)];
    return out;
}

SynthDataset generate(const DataMatrix& base, const SynthSpec& spec, bool force) {
    Eigen::Index cluster_rows = 0;
    for (const auto& c : spec.clusterliers) cluster_rows += c.size;
    const Eigen::Index total_n = base.n() + spec.scatterliers + cluster_rows;

    const Matrix scatter =
        generate_scatterliers(base, spec.scatterliers, mix_seed(spec.seed, 1));
    std::vector<int> spec_of_row;
    const Matrix cluster = generate_clusterliers(spec.clusterliers, total_n,
                                                 mix_seed(spec.seed, 2), force, &spec_of_row);
    return assemble(base, scatter, cluster, spec_of_row);
}

}  // namespace drod
