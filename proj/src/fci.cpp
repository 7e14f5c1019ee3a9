// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqe/fci.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqe {

SpectrumResult diagonalize(const HamiltonianOperator& h) {
    const std::size_t dim = h.basis().size();
    if (dim > kMaxDenseDimension)
        throw std::length_error("sector dimension " + std::to_string(dim) +
                                " exceeds the dense limit; restrict the sector");

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense());
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");

    SpectrumResult out{solver.eigenvalues(), {}};
    out.eigenvectors.reserve(dim);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dim); ++k) {
        Eigen::VectorXd v = solver.eigenvectors().col(k);
        // Fix the sign so the largest-magnitude component is positive.
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0.0) v = -v;
        out.eigenvectors.emplace_back(h.basis_ptr(), v.normalized());
    }
    return out;
}

std::vector<double> eigenstate_overlap(const StateVector& psi, const SpectrumResult& spectrum) {
    std::vector<double> out;
    out.reserve(spectrum.eigenvectors.size());
    for (const auto& v : spectrum.eigenvectors) {
        require_same_basis(v.basis(), psi.basis());
        const double o = v.coefficients().dot(psi.coefficients());
        out.push_back(o * o);
    }
    return out;
}

StateIdentification identify_state(const StateVector& psi, const SpectrumResult& spectrum,
                                   double degeneracy_tol) {
    const auto overlaps = eigenstate_overlap(psi, spectrum);
    const auto& ev = spectrum.eigenvalues;
    StateIdentification best{0, 0, 0.0, -1.0};
    std::size_t k = 0;
    while (k < overlaps.size()) {
        std::size_t end = k + 1;
        double sum = overlaps[k];
        while (end < overlaps.size() &&
               std::abs(ev(static_cast<Eigen::Index>(end)) - ev(static_cast<Eigen::Index>(k))) <=
                   degeneracy_tol) {
            sum += overlaps[end];
            ++end;
        }
        if (sum > best.overlap) best = {k, end - k, ev(static_cast<Eigen::Index>(k)), sum};
        k = end;
    }
    return best;
}

}  // namespace cqe
