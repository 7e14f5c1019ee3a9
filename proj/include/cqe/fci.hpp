// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cqe/statevector.hpp"

namespace cqe {

/// Dense path limit for exact diagonalization.
inline constexpr std::size_t kMaxDenseDimension = 10000;

struct SpectrumResult {
    Eigen::VectorXd eigenvalues;  // ascending
    std::vector<StateVector> eigenvectors;
};

/// Full eigendecomposition of the sector Hamiltonian.
[[nodiscard]] SpectrumResult diagonalize(const HamiltonianOperator& h);

/// |<v_k|psi>|^2 for every eigenvector.
[[nodiscard]] std::vector<double> eigenstate_overlap(const StateVector& psi,
                                                     const SpectrumResult& spectrum);

/// Eigenstate a state has converged to. Overlaps are summed over degenerate
/// clusters (eigenvalues within `degeneracy_tol`), since eigenvectors inside
/// a degenerate eigenspace are arbitrary.
struct StateIdentification {
    std::size_t index;  // lowest eigenvalue index of the cluster
    std::size_t degeneracy;
    double eigenvalue;
    double overlap;
};

[[nodiscard]] StateIdentification identify_state(const StateVector& psi,
                                                 const SpectrumResult& spectrum,
                                                 double degeneracy_tol = 1e-8);

}  // namespace cqe
