// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file two_body.hpp
 * @brief Two-body tensors stored over canonical spin-orbital pairs.
 *
 * A tensor X^{pq;st} that is antisymmetric in (p, q) and in (s, t) is held
 * as a square matrix X_{IJ} with I = (p<q), J = (s<t). The operator built
 * from generator coefficients A is
 *
 *     A_hat = sum_{I,J} A_{IJ} a^dagger_p a^dagger_q a_t a_s,
 *
 * i.e. the unrestricted sum over p, q, s, t with a factor 1/4 absorbed.
 */

#pragma once

#include <Eigen/Dense>

#include "cqe/fock_space.hpp"

namespace cqe {

class PairMatrix {
public:
    explicit PairMatrix(int n_spatial);
    PairMatrix(int n_spatial, Eigen::MatrixXd values);

    [[nodiscard]] int n_spatial() const noexcept { return n_; }
    [[nodiscard]] int n_pairs() const noexcept { return static_cast<int>(m_.rows()); }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return m_; }
    [[nodiscard]] Eigen::MatrixXd& matrix() noexcept { return m_; }

    /// Element over arbitrary spin-orbital indices; zero when p == q or s == t.
    [[nodiscard]] double operator()(int p, int q, int s, int t) const;

    /// True when every entry coupling pairs of different spin type is zero.
    [[nodiscard]] bool is_sz_conserving(double tol = 0.0) const;

protected:
    int n_;
    Eigen::MatrixXd m_;
};

/// Coefficients of a two-body generator, ^2F^{pq;st}.
class TwoBodyCoefficients : public PairMatrix {
public:
    using PairMatrix::PairMatrix;

    [[nodiscard]] bool is_anti_hermitian(double tol = 1e-14) const;
    /// (A - A^T) / 2
    [[nodiscard]] TwoBodyCoefficients anti_hermitian_part() const;
    /// Zeroes every entry coupling pairs of different spin type.
    [[nodiscard]] TwoBodyCoefficients sz_projected() const;

    /// Frobenius inner product over the full pair matrix.
    [[nodiscard]] double dot(const TwoBodyCoefficients& other) const;
    [[nodiscard]] double norm() const { return m_.norm(); }

    TwoBodyCoefficients& operator+=(const TwoBodyCoefficients& o);
    TwoBodyCoefficients& operator-=(const TwoBodyCoefficients& o);
    TwoBodyCoefficients& operator*=(double s);
    friend TwoBodyCoefficients operator+(TwoBodyCoefficients a, const TwoBodyCoefficients& b) {
        return a += b;
    }
    friend TwoBodyCoefficients operator-(TwoBodyCoefficients a, const TwoBodyCoefficients& b) {
        return a -= b;
    }
    friend TwoBodyCoefficients operator*(double s, TwoBodyCoefficients a) { return a *= s; }
    friend TwoBodyCoefficients operator-(TwoBodyCoefficients a) { return a *= -1.0; }
};

/// Two-particle reduced density matrix, ^2D^{pq}_{st} = <psi| a+_p a+_q a_t a_s |psi>.
class TwoRDM : public PairMatrix {
public:
    using PairMatrix::PairMatrix;

    /// sum_{p<q} D^{pq}_{pq}; the full-index trace is twice this, N(N-1).
    [[nodiscard]] double pair_trace() const { return m_.trace(); }
    /// sum_{pq} D^{pq}_{pq} over all ordered index pairs, N(N-1).
    [[nodiscard]] double trace() const { return 2.0 * m_.trace(); }
    /// ^1D^p_q = 1/(N-1) sum_r ^2D^{pr}_{qr}. Requires N >= 2.
    [[nodiscard]] Eigen::MatrixXd one_rdm(int n_electrons) const;
};

}  // namespace cqe
