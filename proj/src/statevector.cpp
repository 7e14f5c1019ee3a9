// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqe/statevector.hpp"

#include <cmath>
#include <vector>

namespace cqe {

StateVector::StateVector(SectorPtr basis, Eigen::VectorXd coefficients)
    : basis_(std::move(basis)), c_(std::move(coefficients)) {
    if (!basis_) throw std::invalid_argument("state requires a basis");
    if (static_cast<std::size_t>(c_.size()) != basis_->size())
        throw std::invalid_argument("coefficient count does not match the basis dimension");
}

StateVector StateVector::basis_state(SectorPtr basis, std::size_t index) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis->size()));
    c(static_cast<Eigen::Index>(index)) = 1.0;
    return {std::move(basis), std::move(c)};
}

StateVector StateVector::normalized() const {
    const double n = c_.norm();
    if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
    return {basis_, c_ / n};
}

void require_same_basis(const SectorBasis& a, const SectorBasis& b) {
    if (!a.same_sector(b)) throw std::invalid_argument("operands live in different sectors");
}

HamiltonianOperator::HamiltonianOperator(const MolecularIntegrals& integrals, SectorPtr basis)
    : integrals_(integrals), basis_(std::move(basis)), v_(integrals.n_spatial()) {
    if (basis_->n_spatial() != integrals_.n_spatial())
        throw std::invalid_argument("sector and integrals disagree on the orbital count");

    const int n = integrals_.n_spatial();
    const int m = 2 * n;
    const PairSpace& pairs = basis_->pairs();
    for (int i = 0; i < pairs.size(); ++i) {
        const auto [p, q] = pairs.pair(i);
        for (int j = 0; j < pairs.size(); ++j) {
            if (pairs.spin(i) != pairs.spin(j)) continue;
            const auto [r, s] = pairs.pair(j);
            v_.matrix()(i, j) = spin_orbital_eri(integrals_, p, q, r, s) -
                                spin_orbital_eri(integrals_, p, q, s, r);
        }
    }

    const auto& dets = basis_->determinants();
    std::vector<Eigen::Triplet<double>> entries;
    for (std::size_t col = 0; col < dets.size(); ++col) {
        const Eigen::Index c = static_cast<Eigen::Index>(col);
        entries.emplace_back(c, c, integrals_.core_energy());
        for (int q = 0; q < m; ++q) {
            if (!dets[col].occupied(q)) continue;
            for (int p = 0; p < m; ++p) {
                const double hpq = spin_orbital_h(integrals_, p, q);
                if (hpq == 0.0) continue;
                const int create[] = {p};
                const int annihilate[] = {q};
                const auto res = apply_excitation(dets[col], create, annihilate);
                if (!res) continue;
                const auto row = basis_->index_of(res->det);
                entries.emplace_back(static_cast<Eigen::Index>(*row), c, res->phase * hpq);
            }
        }
    }
    for (const auto& t : basis_->pair_transitions()) {
        const double v = v_.matrix()(t.create, t.annihilate);
        if (v != 0.0) entries.emplace_back(t.target, t.source, t.sign * v);
    }
    const auto dim = static_cast<Eigen::Index>(dets.size());
    matrix_.resize(dim, dim);
    matrix_.setFromTriplets(entries.begin(), entries.end());
    matrix_.prune(0.0);
}

Eigen::VectorXd apply_hamiltonian(const HamiltonianOperator& h, const StateVector& psi) {
    require_same_basis(h.basis(), psi.basis());
    return h.apply(psi.coefficients());
}

double expectation(const StateVector& psi, const HamiltonianOperator& h) {
    return psi.coefficients().dot(apply_hamiltonian(h, psi));
}

double variance(const StateVector& psi, const HamiltonianOperator& h) {
    const Eigen::VectorXd hpsi = apply_hamiltonian(h, psi);
    const double e = psi.coefficients().dot(hpsi);
    return (hpsi - e * psi.coefficients()).squaredNorm();
}

Eigen::VectorXd apply_two_body(const TwoBodyCoefficients& f, const SectorBasis& basis,
                               const Eigen::VectorXd& x) {
    if (f.n_spatial() != basis.n_spatial())
        throw std::invalid_argument("generator and sector disagree on the orbital count");
    if (!f.is_sz_conserving()) throw std::invalid_argument("generator does not conserve S_z");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    const Eigen::MatrixXd& a = f.matrix();
    for (const auto& t : basis.pair_transitions()) {
        out(t.target) += t.sign * a(t.create, t.annihilate) * x(t.source);
    }
    return out;
}

Eigen::VectorXd apply_two_body(const TwoBodyCoefficients& f, const StateVector& psi) {
    return apply_two_body(f, psi.basis(), psi.coefficients());
}

StateVector exp_apply(const TwoBodyCoefficients& a, double scale, const StateVector& psi) {
    if (!a.is_anti_hermitian(1e-12 * std::max(1.0, a.norm())))
        throw std::invalid_argument("exp_apply requires an anti-Hermitian generator");
    if (scale == 0.0 || a.norm() == 0.0) return psi;

    const TwoBodyCoefficients scaled = scale * a;
    Eigen::VectorXd result = psi.coefficients();
    Eigen::VectorXd term = result;
    for (int k = 1; k <= kMaxTaylorTerms; ++k) {
        term = apply_two_body(scaled, psi.basis(), term) / k;
        result += term;
        if (term.norm() < 1e-15 * result.norm()) {
            return StateVector(psi.basis_ptr(), result / result.norm());
        }
    }
    throw SeriesDivergence("exponential series did not converge in " +
                           std::to_string(kMaxTaylorTerms) + " terms; reduce the step scale");
}

PairMatrix transition_2rdm(const SectorBasis& basis, const Eigen::VectorXd& bra,
                           const Eigen::VectorXd& ket) {
    PairMatrix out(basis.n_spatial());
    Eigen::MatrixXd& m = out.matrix();
    for (const auto& t : basis.pair_transitions()) {
        m(t.create, t.annihilate) += t.sign * bra(t.target) * ket(t.source);
    }
    return out;
}

TwoRDM compute_2rdm(const StateVector& psi) {
    auto t = transition_2rdm(psi.basis(), psi.coefficients(), psi.coefficients());
    return TwoRDM(psi.basis().n_spatial(), std::move(t.matrix()));
}

double energy_from_2rdm(const HamiltonianOperator& h, const TwoRDM& d2) {
    const auto& ints = h.integrals();
    const int m = ints.n_spin_orbitals();
    double e = ints.core_energy() + h.antisymmetrized_eri().matrix().cwiseProduct(d2.matrix()).sum();
    const int n_el = h.basis().n_electrons();
    if (n_el >= 2) {
        const Eigen::MatrixXd d1 = d2.one_rdm(n_el);
        for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q) e += spin_orbital_h(ints, p, q) * d1(p, q);
    } else if (n_el == 1) {
        throw std::invalid_argument("one-electron energies need the 1-RDM, not the 2-RDM");
    }
    return e;
}

SpinExpectation spin_expectations(const StateVector& psi) {
    const SectorBasis& basis = psi.basis();
    const int n = basis.n_spatial();
    const double sz = 0.5 * (basis.n_alpha() - basis.n_beta());
    const Eigen::VectorXd& c = psi.coefficients();

    // <S- S+> with S+ = sum_p a+_{p alpha} a_{p beta}.
    double minus_plus = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (c(static_cast<Eigen::Index>(i)) == 0.0) continue;
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) {
                const LadderOp ops[] = {{true, p + n}, {false, p}, {true, q}, {false, q + n}};
                const auto res = apply_string(basis[i], ops);
                if (!res) continue;
                const auto j = basis.index_of(res->det);
                minus_plus += res->phase * c(static_cast<Eigen::Index>(*j)) *
                              c(static_cast<Eigen::Index>(i));
            }
        }
    }
    return {sz, minus_plus + sz * sz + sz};
}

int multiplicity(double s_squared) {
    return static_cast<int>(std::lround(std::sqrt(4.0 * std::max(0.0, s_squared) + 1.0)));
}

}  // namespace cqe
