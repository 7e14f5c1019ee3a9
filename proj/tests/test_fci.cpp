// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "cqe/fci.hpp"
#include "cqe/solver.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cqe;

TEST_CASE("one-dimensional sector") {
    MolecularIntegrals ints(1, 2);
    ints.set_core_energy(0.4);
    ints.set_h(0, 0, -1.3);
    ints.set_eri(0, 0, 0, 0, 0.7);
    const auto spectrum = diagonalize(HamiltonianOperator(ints, enumerate_sector(1, 1, 1)));
    REQUIRE(spectrum.eigenvalues.size() == 1);
    CHECK(spectrum.eigenvalues(0) == doctest::Approx(0.4 - 2.6 + 0.7).epsilon(1e-15));
}

TEST_CASE("two-level sector") {
    MolecularIntegrals ints(2, 1, 1);
    ints.set_h(0, 0, -1.0);
    ints.set_h(1, 1, 0.5);
    ints.set_h(0, 1, 0.3);
    const auto spectrum = diagonalize(HamiltonianOperator(ints, enumerate_sector(2, 1, 0)));
    const double mean = -0.25;
    const double half = std::sqrt(0.75 * 0.75 + 0.09);
    CHECK(spectrum.eigenvalues(0) == doctest::Approx(mean - half).epsilon(1e-14));
    CHECK(spectrum.eigenvalues(1) == doctest::Approx(mean + half).epsilon(1e-14));
}

TEST_CASE("H4 spectrum") {
    const auto ints = read_fcidump(oracle::fixture("h4_linear_sto6g_1.00.fcidump"));
    const auto basis = enumerate_sector(4, 2, 2);
    const HamiltonianOperator h(ints, basis);
    const auto spectrum = diagonalize(h);

    SUBCASE("lowest levels") {
        // ground-state energy plus its CQE error from the published table
        CHECK(std::abs(spectrum.eigenvalues(0) - (-2.18096635 - 6.6e-7)) < 1e-5);
        const double reference[] = {-2.180966514679427, -1.9501914481318279, -1.7365472567659994,
                                    -1.6671116525552225, -1.638926880044898, -1.4571347254424305};
        for (int k = 0; k < 6; ++k) CHECK(std::abs(spectrum.eigenvalues(k) - reference[k]) < 1e-9);
    }
    SUBCASE("eigen-decomposition reconstructs the matrix") {
        const Eigen::MatrixXd dense = h.dense();
        Eigen::MatrixXd v(dense.rows(), dense.cols());
        for (Eigen::Index k = 0; k < v.cols(); ++k) v.col(k) = spectrum.eigenvectors[static_cast<std::size_t>(k)].coefficients();
        CHECK((v * spectrum.eigenvalues.asDiagonal() * v.transpose() - dense).norm() < 1e-11);
        CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(v.rows(), v.cols())).norm() < 1e-12);
        CHECK(spectrum.eigenvalues.sum() == doctest::Approx(dense.trace()).epsilon(1e-12));
        for (Eigen::Index k = 0; k < v.cols(); ++k)
            CHECK((dense * v.col(k) - spectrum.eigenvalues(k) * v.col(k)).norm() < 1e-11);
    }
    SUBCASE("triplet levels recur in the high-spin sectors") {
        for (auto [na, nb] : {std::pair{1, 3}, std::pair{3, 1}}) {
            const auto hs = diagonalize(HamiltonianOperator(ints, enumerate_sector(4, na, nb)));
            CHECK(hs.eigenvalues(0) == doctest::Approx(spectrum.eigenvalues(1)).epsilon(1e-11));
            CHECK(hs.eigenvalues(1) == doctest::Approx(spectrum.eigenvalues(2)).epsilon(1e-11));
        }
    }
    SUBCASE("overlaps sum to one and identify eigenvectors") {
        std::mt19937 rng(2);
        const auto psi = oracle::random_state(basis, rng);
        const auto o = eigenstate_overlap(psi, spectrum);
        double total = 0.0;
        for (double x : o) total += x;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        const auto id = identify_state(spectrum.eigenvectors[4], spectrum);
        CHECK(id.index == 4);
        CHECK(id.degeneracy == 1);
        CHECK(id.overlap == doctest::Approx(1.0));
    }
}

TEST_CASE("degenerate levels are identified as a cluster") {
    const auto ints = read_fcidump(oracle::fixture("bh/bh_sto6g_1.20.fcidump"));
    const auto basis = enumerate_sector(5, 2, 2);
    const auto spectrum = diagonalize(HamiltonianOperator(ints, basis));
    // equal mix of the two components of a doubly degenerate level
    const Eigen::VectorXd mix =
        (spectrum.eigenvectors[3].coefficients() + spectrum.eigenvectors[4].coefficients()) / std::sqrt(2.0);
    const auto id = identify_state(StateVector(basis, mix), spectrum);
    CHECK(id.index == 3);
    CHECK(id.degeneracy == 2);
    CHECK(id.overlap == doctest::Approx(1.0));
    CHECK(id.eigenvalue == spectrum.eigenvalues(3));
}
