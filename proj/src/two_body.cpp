// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqe/two_body.hpp"

#include <algorithm>
#include <stdexcept>

namespace cqe {

namespace {
int pair_count(int n_spatial) { return n_spatial * (2 * n_spatial - 1); }

// Row-major index of the canonical pair (p < q) among 2n spin orbitals.
int canonical_index(int n_spatial, int p, int q) {
    const int m = 2 * n_spatial;
    return p * (2 * m - p - 1) / 2 + (q - p - 1);
}
}  // namespace

PairMatrix::PairMatrix(int n_spatial)
    : n_(n_spatial), m_(Eigen::MatrixXd::Zero(pair_count(n_spatial), pair_count(n_spatial))) {}

PairMatrix::PairMatrix(int n_spatial, Eigen::MatrixXd values) : n_(n_spatial), m_(std::move(values)) {
    if (m_.rows() != pair_count(n_) || m_.cols() != pair_count(n_))
        throw std::invalid_argument("pair matrix has the wrong dimension");
}

double PairMatrix::operator()(int p, int q, int s, int t) const {
    if (p == q || s == t) return 0.0;
    const int m = 2 * n_;
    if (p < 0 || q < 0 || s < 0 || t < 0 || p >= m || q >= m || s >= m || t >= m)
        throw std::invalid_argument("spin-orbital index out of range");
    const int sign = ((p < q) == (s < t)) ? 1 : -1;
    return sign * m_(canonical_index(n_, std::min(p, q), std::max(p, q)),
                     canonical_index(n_, std::min(s, t), std::max(s, t)));
}

bool PairMatrix::is_sz_conserving(double tol) const {
    const PairSpace ps(n_);
    for (int i = 0; i < n_pairs(); ++i)
        for (int j = 0; j < n_pairs(); ++j)
            if (ps.spin(i) != ps.spin(j) && std::abs(m_(i, j)) > tol) return false;
    return true;
}

bool TwoBodyCoefficients::is_anti_hermitian(double tol) const {
    return (m_ + m_.transpose()).cwiseAbs().maxCoeff() <= tol;
}

TwoBodyCoefficients TwoBodyCoefficients::anti_hermitian_part() const {
    return TwoBodyCoefficients(n_, 0.5 * (m_ - m_.transpose()));
}

TwoBodyCoefficients TwoBodyCoefficients::sz_projected() const {
    const PairSpace ps(n_);
    TwoBodyCoefficients out = *this;
    for (int i = 0; i < n_pairs(); ++i)
        for (int j = 0; j < n_pairs(); ++j)
            if (ps.spin(i) != ps.spin(j)) out.m_(i, j) = 0.0;
    return out;
}

double TwoBodyCoefficients::dot(const TwoBodyCoefficients& other) const {
    return m_.cwiseProduct(other.m_).sum();
}

TwoBodyCoefficients& TwoBodyCoefficients::operator+=(const TwoBodyCoefficients& o) {
    m_ += o.m_;
    return *this;
}

TwoBodyCoefficients& TwoBodyCoefficients::operator-=(const TwoBodyCoefficients& o) {
    m_ -= o.m_;
    return *this;
}

TwoBodyCoefficients& TwoBodyCoefficients::operator*=(double s) {
    m_ *= s;
    return *this;
}

Eigen::MatrixXd TwoRDM::one_rdm(int n_electrons) const {
    if (n_electrons < 2) throw std::invalid_argument("one_rdm from the 2-RDM needs N >= 2");
    const int m = 2 * n_;
    Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(m, m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r) d1(p, q) += (*this)(p, r, q, r);
    return d1 / (n_electrons - 1);
}

}  // namespace cqe
