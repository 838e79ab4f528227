#include <cmath>
#include <vector>

#include "doctest.h"
#include "drod/errors.hpp"
#include "drod/scoring.hpp"
#include "support/datagen.hpp"

using drod::DataMatrix;
using drod::Matrix;
using drod::Metric;
using drod::NeighborGraph;
using drod::SpatialIndex;
using drod::SubsetPartition;
using drod::Vector;

namespace {

// Hand-built graph from an undirected edge list.
NeighborGraph make_graph(Eigen::Index n,
                         const std::vector<std::pair<Eigen::Index, Eigen::Index>>& edges) {
    NeighborGraph g;
    g.n = n;
    g.nb_lists.assign(static_cast<std::size_t>(n), {});
    for (const auto& [i, j] : edges) {
        g.nb_lists[static_cast<std::size_t>(i)].push_back(j);
        g.nb_lists[static_cast<std::size_t>(j)].push_back(i);
    }
    g.nb_counts.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        auto& row = g.nb_lists[static_cast<std::size_t>(i)];
        std::sort(row.begin(), row.end());
        g.nb_counts[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(row.size());
    }
    g.lambda = 1;
    return g;
}

// Hand-built partition from explicit member lists.
SubsetPartition make_partition(Eigen::Index n,
                               const std::vector<std::vector<Eigen::Index>>& subsets,
                               const std::vector<double>& rho) {
    SubsetPartition part;
    part.subsets = subsets;
    part.assignment.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        double peak = 0.0;
        for (const Eigen::Index id : subsets[s]) {
            part.assignment[static_cast<std::size_t>(id)] = static_cast<Eigen::Index>(s);
            peak = std::max(peak, rho[static_cast<std::size_t>(id)]);
        }
        part.peak_density.push_back(peak);
    }
    part.upper_limit = static_cast<Eigen::Index>(n);
    return part;
}

}  // namespace

TEST_SUITE("dual_scoring") {

TEST_CASE("lai is the gap to the subset density peak") {
    const std::vector<double> rho{2.0 / 11.0, 0.2, 2.0 / 19.0};
    const auto part = make_partition(3, {{1, 0, 2}}, rho);
    const auto lai = drod::compute_lai(part, rho);
    CHECK(lai[1] == 0.0);
    CHECK(lai[0] == doctest::Approx(0.0182).epsilon(1e-2));
    CHECK(lai[2] == doctest::Approx(0.0947).epsilon(1e-2));
}

TEST_CASE("singletons and flat subsets get zero lai") {
    const std::vector<double> rho{0.0, 0.3, 0.3};
    const auto part = make_partition(3, {{0}, {1, 2}}, rho);
    const auto lai = drod::compute_lai(part, rho);
    CHECK(lai == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("subset centers are coordinate means") {
    Matrix pts(7, 2);
    pts << 0, 0, 2, 0,            // midpoint (1, 0)
        5, 5,                     // singleton
        0, 0, 0, 1, 1, 0, 1, 1;   // unit square corners
    const auto part = make_partition(7, {{0, 1}, {2}, {3, 4, 5, 6}},
                                     std::vector<double>(7, 1.0));
    const Matrix centers = drod::subset_centers(part, pts);
    CHECK(centers(0, 0) == 1.0);
    CHECK(centers(0, 1) == 0.0);
    CHECK(centers(1, 0) == 5.0);
    CHECK(centers(1, 1) == 5.0);
    CHECK(centers(2, 0) == 0.5);
    CHECK(centers(2, 1) == 0.5);
}

TEST_CASE("link strength counts cross pairs over center distance") {
    // Subsets of coincident points at 0, 1, and 2 on a line.
    Matrix pts(7, 1);
    pts << -100, 0, 0, 1, 1, 2, 2;
    const std::vector<double> rho(7, 1.0);
    const auto part = make_partition(7, {{0}, {1, 2}, {3, 4}, {5, 6}}, rho);
    const Matrix centers = drod::subset_centers(part, pts);

    SUBCASE("one pair at distance 2 gives 0.5") {
        const auto g = make_graph(7, {{1, 5}});
        CHECK(drod::link_strength(1, 3, part, g, centers, false, 1e-12) == doctest::Approx(0.5));
        CHECK(drod::link_strength(3, 1, part, g, centers, false, 1e-12) == doctest::Approx(0.5));
    }
    SUBCASE("no cross pairs gives zero regardless of distance") {
        const auto g = make_graph(7, {{1, 2}});  // intra-subset edge only
        CHECK(drod::link_strength(1, 2, part, g, centers, false, 1e-12) == 0.0);
    }
    SUBCASE("three pairs at distance 1 give 3") {
        const auto g = make_graph(7, {{1, 3}, {1, 4}, {2, 3}});
        CHECK(drod::link_strength(1, 2, part, g, centers, false, 1e-12) == doctest::Approx(3.0));
        CHECK(drod::link_strength(2, 1, part, g, centers, false, 1e-12) == doctest::Approx(3.0));
    }
}

TEST_CASE("sai is one minus the min-max of total link strength") {
    // Chain B-C-D with an isolated A: totals [0, 2, 4, 2] → sai [1, .5, 0, .5].
    Matrix pts(7, 1);
    pts << -100, 0, 0, 1, 1, 2, 2;
    const std::vector<double> rho(7, 1.0);
    const auto part = make_partition(7, {{0}, {1, 2}, {3, 4}, {5, 6}}, rho);
    const auto g = make_graph(7, {{1, 3}, {2, 4}, {3, 5}, {4, 6}});
    const auto scores = drod::compute_sai(part, g, pts, false);
    CHECK(scores.ls_total == std::vector<double>{0.0, 2.0, 4.0, 2.0});
    CHECK(scores.sai == std::vector<double>{1.0, 0.5, 0.0, 0.5});
}

TEST_CASE("degenerate normalizations map to zero sai") {
    Matrix pts(4, 1);
    pts << 0, 0, 1, 1;
    const std::vector<double> rho(4, 1.0);

    SUBCASE("single subset") {
        const auto part = make_partition(4, {{0, 1, 2, 3}}, rho);
        const auto g = make_graph(4, {{0, 1}, {2, 3}});
        const auto scores = drod::compute_sai(part, g, pts, false);
        CHECK(scores.sai == std::vector<double>{0.0});
    }
    SUBCASE("equal totals") {
        const auto part = make_partition(4, {{0, 1}, {2, 3}}, rho);
        const auto g = make_graph(4, {{1, 2}});
        const auto scores = drod::compute_sai(part, g, pts, false);
        CHECK(scores.ls_total[0] == scores.ls_total[1]);
        CHECK(scores.sai == std::vector<double>{0.0, 0.0});
    }
}

TEST_CASE("coincident centers use the delta guard instead of dividing by zero") {
    Matrix pts(4, 1);
    pts << 0, 4, 2, 2;  // subsets {0,1} and {2,3} share the center 2
    const std::vector<double> rho(4, 1.0);
    const auto part = make_partition(4, {{0, 1}, {2, 3}}, rho);
    const auto g = make_graph(4, {{0, 2}});
    const auto scores = drod::compute_sai(part, g, pts, false);
    CHECK(std::isfinite(scores.ls_total[0]));
    CHECK(scores.ls_total[0] > 1e9);  // 1 / (1e-12 · diameter 4)
}

TEST_CASE("dai combines sai and lai multiplicatively") {
    const std::vector<double> rho{0.5, 0.2};
    const auto part = make_partition(2, {{0, 1}}, rho);
    drod::SubsetScores scores;
    scores.sai = {0.5};
    scores.ls_total = {0.0};
    const std::vector<double> lai{0.0, 0.3};
    const auto dai = drod::compute_dai(lai, scores, part);
    CHECK(dai[1] == doctest::Approx(0.65));
    CHECK(dai[0] == 0.5);

    scores.sai = {0.0};
    CHECK(drod::compute_dai(lai, scores, part) == std::vector<double>{0.0, 0.0});

    scores.sai = {1.0};
    CHECK(drod::compute_dai({0.0, 0.0}, scores, part)[0] == 1.0);
}

TEST_CASE("dai factorization holds bitwise on a full pipeline run") {
    const Matrix pts = testdata::vstack({
        testdata::gaussian_blob(80, Vector::Zero(2), 1.0, 3),
        testdata::gaussian_blob(12, Vector::Constant(2, 8.0), 0.4, 4),
    });
    const SpatialIndex index(pts, false);
    const auto g = drod::search_natural_neighbors(index);
    const auto rho = drod::local_density(g, index);
    const auto part = drod::explore_subsets(g, rho, drod::default_upper_limit(92));
    const auto lai = drod::compute_lai(part, rho);
    const auto scores = drod::compute_sai(part, g, pts, false);
    const auto dai = drod::compute_dai(lai, scores, part);

    for (std::size_t i = 0; i < dai.size(); ++i) {
        const auto s = static_cast<std::size_t>(part.assignment[i]);
        CHECK(dai[i] == scores.sai[s] * (1.0 + lai[i]));
        CHECK(dai[i] >= 0.0);
    }
    for (const double s : scores.sai) {
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}

TEST_CASE("scatterliers and clusterlier members outscore normal samples") {
    // One normal cluster, one compact anomalous micro-cluster, and three
    // isolated points. The coordinate spread matters: density gaps are
    // absolute, so samples must sit a few units apart for the gap term to
    // stay small against the subset-anomaly band.
    const Matrix normal = testdata::gaussian_blob(150, Vector::Zero(2), 100.0, 17);
    const Matrix micro = testdata::gaussian_blob(10, Vector::Constant(2, 900.0), 35.0, 18);
    Matrix scatter(3, 2);
    scatter << -800, 800, 900, -700, -900, -900;
    const Matrix pts = testdata::vstack({normal, micro, scatter});

    const SpatialIndex index(pts, false);
    const auto g = drod::search_natural_neighbors(index);
    const auto rho = drod::local_density(g, index);
    const auto part = drod::explore_subsets(g, rho, drod::default_upper_limit(pts.rows()));
    const auto lai = drod::compute_lai(part, rho);
    const auto scores = drod::compute_sai(part, g, pts, false);
    const auto dai = drod::compute_dai(lai, scores, part);

    auto mean_over = [&](Eigen::Index lo, Eigen::Index hi) {
        double total = 0.0;
        for (Eigen::Index i = lo; i < hi; ++i) total += dai[static_cast<std::size_t>(i)];
        return total / static_cast<double>(hi - lo);
    };
    const double mean_normal = mean_over(0, 150);
    const double mean_micro = mean_over(150, 160);
    const double mean_scatter = mean_over(160, 163);
    CHECK(mean_micro > mean_normal);
    CHECK(mean_scatter > mean_normal);
}

}  // TEST_SUITE
