// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file statevector.hpp
 * @brief Exact real statevectors over a sector basis, the sparse Hamiltonian,
 *        two-body operator action, exponential action, RDMs and spin.
 */

#pragma once

#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cqe/fock_space.hpp"
#include "cqe/integrals.hpp"
#include "cqe/two_body.hpp"

namespace cqe {

class StateVector {
public:
    StateVector(SectorPtr basis, Eigen::VectorXd coefficients);

    /// Unit vector on determinant `index`.
    [[nodiscard]] static StateVector basis_state(SectorPtr basis, std::size_t index);

    [[nodiscard]] const SectorBasis& basis() const noexcept { return *basis_; }
    [[nodiscard]] const SectorPtr& basis_ptr() const noexcept { return basis_; }
    [[nodiscard]] const Eigen::VectorXd& coefficients() const noexcept { return c_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(c_.size()); }
    [[nodiscard]] double norm() const { return c_.norm(); }
    [[nodiscard]] StateVector normalized() const;

private:
    SectorPtr basis_;
    Eigen::VectorXd c_;
};

/// Second-quantized Hamiltonian restricted to one sector, cached as a sparse matrix.
class HamiltonianOperator {
public:
    HamiltonianOperator(const MolecularIntegrals& integrals, SectorPtr basis);

    [[nodiscard]] const SectorBasis& basis() const noexcept { return *basis_; }
    [[nodiscard]] const SectorPtr& basis_ptr() const noexcept { return basis_; }
    [[nodiscard]] const MolecularIntegrals& integrals() const noexcept { return integrals_; }
    [[nodiscard]] const Eigen::SparseMatrix<double, Eigen::RowMajor>& matrix() const noexcept {
        return matrix_;
    }
    [[nodiscard]] Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }

    /// Antisymmetrized spin-orbital integrals <pq||rs> over canonical pairs.
    [[nodiscard]] const PairMatrix& antisymmetrized_eri() const noexcept { return v_; }

    [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return matrix_ * x; }

private:
    MolecularIntegrals integrals_;
    SectorPtr basis_;
    PairMatrix v_;
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix_;
};

/// Raised when a Taylor series fails to converge within its term budget.
class SeriesDivergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void require_same_basis(const SectorBasis& a, const SectorBasis& b);

[[nodiscard]] Eigen::VectorXd apply_hamiltonian(const HamiltonianOperator& h, const StateVector& psi);
[[nodiscard]] double expectation(const StateVector& psi, const HamiltonianOperator& h);
/// ||(H - E)psi||^2 with E = <psi|H|psi>.
[[nodiscard]] double variance(const StateVector& psi, const HamiltonianOperator& h);

/// F_hat x for a raw coefficient vector x over `basis`.
[[nodiscard]] Eigen::VectorXd apply_two_body(const TwoBodyCoefficients& f, const SectorBasis& basis,
                                             const Eigen::VectorXd& x);
[[nodiscard]] Eigen::VectorXd apply_two_body(const TwoBodyCoefficients& f, const StateVector& psi);

inline constexpr int kMaxTaylorTerms = 200;

/// exp(scale * A_hat) psi via adaptive Taylor series, renormalized.
[[nodiscard]] StateVector exp_apply(const TwoBodyCoefficients& a, double scale,
                                    const StateVector& psi);

/// <bra| a+_p a+_q a_t a_s |ket> over canonical pairs (I = pq, J = st).
[[nodiscard]] PairMatrix transition_2rdm(const SectorBasis& basis, const Eigen::VectorXd& bra,
                                         const Eigen::VectorXd& ket);
[[nodiscard]] TwoRDM compute_2rdm(const StateVector& psi);

/// E_core + tr(h D1) + sum_IJ <pq||rs> D_IJ.
[[nodiscard]] double energy_from_2rdm(const HamiltonianOperator& h, const TwoRDM& d2);

struct SpinExpectation {
    double sz;
    double s_squared;
};

[[nodiscard]] SpinExpectation spin_expectations(const StateVector& psi);
/// 2S+1 from <S^2>.
[[nodiscard]] int multiplicity(double s_squared);

}  // namespace cqe
