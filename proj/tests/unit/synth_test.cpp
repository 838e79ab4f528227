#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "drod/errors.hpp"
#include "drod/synth.hpp"
#include "support/datagen.hpp"

using drod::ClusterlierSpec;
using drod::DataMatrix;
using drod::Matrix;
using drod::SynthSpec;
using drod::Vector;

TEST_SUITE("synth_gen") {

TEST_CASE("scatterlier bounds stretch one and a half ranges from the mean") {
    Matrix col(3, 1);
    col << 0, 1, 2;
    const auto b = drod::scatterlier_bounds(DataMatrix(col));
    CHECK(b.first(0) == doctest::Approx(-0.5));
    CHECK(b.second(0) == doctest::Approx(2.5));

    Matrix flat(2, 1);
    flat << 5, 5;
    const auto f = drod::scatterlier_bounds(DataMatrix(flat));
    CHECK(f.first(0) == 5.0);
    CHECK(f.second(0) == 5.0);

    Matrix skew(3, 2);
    // Column 0 symmetric around 1; column 1 has mean 1 with min −1, max 2,
    // so the half-width is max(|2−1|, |1−(−1)|) · 1.5 = 3.
    skew << 0, -1, 1, 2, 2, 2;
    const auto s = drod::scatterlier_bounds(DataMatrix(skew));
    CHECK(s.first(0) == doctest::Approx(-0.5));
    CHECK(s.second(0) == doctest::Approx(2.5));
    CHECK(s.first(1) == doctest::Approx(-2.0));
    CHECK(s.second(1) == doctest::Approx(4.0));
}

TEST_CASE("scatterliers stay in bounds and fill the box") {
    Matrix col(3, 1);
    col << 0, 1, 2;
    const DataMatrix base(col);
    const Matrix pts = drod::generate_scatterliers(base, 10000, 77);
    REQUIRE(pts.rows() == 10000);
    REQUIRE(pts.cols() == 1);
    CHECK(pts.minCoeff() >= -0.5);
    CHECK(pts.maxCoeff() <= 2.5);
    CHECK(pts.mean() == doctest::Approx(1.0).epsilon(0.05));
    // Both halves of the interval get draws.
    CHECK(pts.minCoeff() < 0.0);
    CHECK(pts.maxCoeff() > 2.0);

    CHECK(drod::generate_scatterliers(base, 0, 77).rows() == 0);
    CHECK(drod::generate_scatterliers(base, 5, 77) == drod::generate_scatterliers(base, 5, 77));
}

TEST_CASE("clusterlier moments match the requested gaussian") {
    ClusterlierSpec spec;
    spec.size = 100;
    spec.mean = Vector::Constant(2, 50.0);
    spec.stddev = Vector::Constant(2, 0.5);
    const Matrix pts = drod::generate_clusterliers({spec}, 1000, 31);
    REQUIRE(pts.rows() == 100);
    for (Eigen::Index c = 0; c < 2; ++c) {
        const double mean = pts.col(c).mean();
        const double sd = std::sqrt((pts.col(c).array() - mean).square().mean());
        CHECK(mean == doctest::Approx(50.0).epsilon(0.004));  // ±0.2 absolute
        CHECK(sd == doctest::Approx(0.5).epsilon(0.2));
    }
}

TEST_CASE("each micro-cluster is capped at a tenth of the final size") {
    ClusterlierSpec a;
    a.size = 26;
    a.mean = Vector::Zero(2);
    a.stddev = Vector::Constant(2, 0.3);
    ClusterlierSpec b = a;
    b.mean = Vector::Constant(2, 9.0);
    // Assembled size 324 (266 base + 2·26 + 6 scatterliers): 10·26 = 260 ≤ 324.
    std::vector<int> spec_of_row;
    const Matrix pts = drod::generate_clusterliers({a, b}, 324, 8, false, &spec_of_row);
    CHECK(pts.rows() == 52);
    CHECK(std::count(spec_of_row.begin(), spec_of_row.end(), 0) == 26);
    CHECK(std::count(spec_of_row.begin(), spec_of_row.end(), 1) == 26);

    ClusterlierSpec fat = a;
    fat.size = 40;  // 10·40 = 400 > 324
    CHECK_THROWS_AS(drod::generate_clusterliers({fat}, 324, 8), drod::CapExceeded);
    CHECK(drod::generate_clusterliers({fat}, 324, 8, true).rows() == 40);
}

TEST_CASE("clusterlier spec validation") {
    ClusterlierSpec spec;
    spec.size = 0;
    spec.mean = Vector::Zero(2);
    spec.stddev = Vector::Constant(2, 1.0);
    CHECK_THROWS_AS(drod::generate_clusterliers({spec}, 1000, 1, true), drod::Error);
    spec.size = 3;
    spec.stddev = Vector::Constant(2, 0.0);
    CHECK_THROWS_AS(drod::generate_clusterliers({spec}, 1000, 1, true), drod::Error);
    spec.stddev = Vector::Constant(3, 1.0);
    CHECK_THROWS_AS(drod::generate_clusterliers({spec}, 1000, 1, true),
                    drod::DimensionMismatch);

    ClusterlierSpec other;
    other.size = 3;
    other.mean = Vector::Zero(4);
    other.stddev = Vector::Constant(4, 1.0);
    spec.stddev = Vector::Constant(2, 1.0);
    CHECK_THROWS_AS(drod::generate_clusterliers({spec, other}, 1000, 1, true),
                    drod::DimensionMismatch);
}

TEST_CASE("assemble stacks base then scatterliers then clusterliers") {
    const Matrix base = testdata::uniform_cloud(1000, 3, 9);
    const Matrix scat = testdata::uniform_cloud(50, 3, 10, -2.0, 3.0);
    const Matrix clus = testdata::uniform_cloud(50, 3, 11, 5.0, 6.0);
    const auto ds = drod::assemble(DataMatrix(base), scat, clus, std::vector<int>(50, 0));
    REQUIRE(ds.values.rows() == 1100);
    CHECK(ds.values.topRows(1000) == base);
    CHECK(ds.values.middleRows(1000, 50) == scat);
    CHECK(ds.values.bottomRows(50) == clus);
    CHECK(std::count(ds.labels.begin(), ds.labels.end(), 1) == 100);
    CHECK(std::count(ds.labels.begin(), ds.labels.end(), 0) == 1000);
    for (std::size_t i = 0; i < 1000; ++i) CHECK(ds.provenance[i] == 0);
    for (std::size_t i = 1000; i < 1050; ++i) CHECK(ds.provenance[i] == -1);
    for (std::size_t i = 1050; i < 1100; ++i) CHECK(ds.provenance[i] == 1);
}

TEST_CASE("assemble with no injections labels everything inlier") {
    const Matrix base = testdata::uniform_cloud(20, 2, 12);
    const auto ds = drod::assemble(DataMatrix(base), Matrix(0, 2), Matrix(0, 2), {});
    CHECK(ds.values == base);
    CHECK(std::count(ds.labels.begin(), ds.labels.end(), 0) == 20);
}

TEST_CASE("assemble rejects mismatched dimensions") {
    const Matrix base = testdata::uniform_cloud(20, 2, 13);
    const Matrix wrong = testdata::uniform_cloud(5, 3, 14);
    CHECK_THROWS_AS(drod::assemble(DataMatrix(base), wrong, Matrix(0, 2), {}),
                    drod::DimensionMismatch);
    CHECK_THROWS_AS(
        drod::assemble(DataMatrix(base), Matrix(0, 2), wrong, std::vector<int>(5, 0)),
        drod::DimensionMismatch);
    // Provenance length must match the clusterlier row count.
    const Matrix clus = testdata::uniform_cloud(5, 2, 15);
    CHECK_THROWS_AS(drod::assemble(DataMatrix(base), Matrix(0, 2), clus, {0, 0}),
                    drod::DimensionMismatch);
}

TEST_CASE("generate is deterministic and splits streams per component") {
    const Matrix base = testdata::uniform_cloud(300, 2, 15, 0.0, 10.0);
    SynthSpec spec;
    spec.scatterliers = 12;
    ClusterlierSpec c;
    c.size = 15;
    c.mean = Vector::Constant(2, 5.0);
    c.stddev = Vector::Constant(2, 0.2);
    spec.clusterliers = {c};
    spec.seed = 2024;

    const auto a = drod::generate(DataMatrix(base), spec);
    const auto b = drod::generate(DataMatrix(base), spec);
    CHECK(a.values == b.values);
    CHECK(a.labels == b.labels);
    CHECK(a.values.rows() == 327);
    CHECK(std::count(a.labels.begin(), a.labels.end(), 1) == 27);

    SynthSpec reseeded = spec;
    reseeded.seed = 2025;
    CHECK(drod::generate(DataMatrix(base), reseeded).values !=
          drod::generate(DataMatrix(base), spec).values);
}

}  // TEST_SUITE
