// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqe/measurement.hpp"

#include <complex>
#include <string>

namespace cqe {

void MeasurementConfig::validate() const {
    if (deltas.empty()) throw std::invalid_argument("delta ladder is empty");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0)) throw std::invalid_argument("delta values must be positive");
        if (i > 0 && !(deltas[i] < deltas[i - 1]))
            throw std::invalid_argument("delta values must be strictly decreasing");
    }
    if (richardson_order < 1 || static_cast<std::size_t>(richardson_order) > deltas.size())
        throw std::invalid_argument("richardson_order must lie in [1, number of deltas]");
}

Eigen::VectorXcd tilde_state(const StateVector& psi, const HamiltonianOperator& h, double energy,
                             double delta) {
    require_same_basis(h.basis(), psi.basis());
    Eigen::VectorXcd result = psi.coefficients().cast<std::complex<double>>();
    if (delta == 0.0) return result;
    const std::complex<double> factor(0.0, delta);
    Eigen::VectorXcd term = result;
    for (int k = 1; k <= kMaxTaylorTerms; ++k) {
        // (H - E) acts separately on the real and imaginary parts.
        const Eigen::VectorXd re = term.real();
        const Eigen::VectorXd im = term.imag();
        Eigen::VectorXcd shifted(term.size());
        shifted.real() = h.apply(re) - energy * re;
        shifted.imag() = h.apply(im) - energy * im;
        term = (factor / static_cast<double>(k)) * shifted;
        result += term;
        if (term.norm() < 1e-15 * result.norm()) return result;
    }
    throw SeriesDivergence("auxiliary-state series did not converge; reduce delta");
}

double emulated_variance(const StateVector& psi, const HamiltonianOperator& h, double delta) {
    const double e = expectation(psi, h);
    const Eigen::VectorXcd tilde = tilde_state(psi, h, e, delta);
    const double overlap_re = psi.coefficients().dot(tilde.real());
    return (1.0 - overlap_re) / (0.5 * delta * delta);
}

namespace {

struct SingleDelta {
    double variance;
    PairMatrix kernel;
};

SingleDelta measure_one(const StateVector& psi, const HamiltonianOperator& h, double energy,
                        const TwoRDM& d2, double delta) {
    const Eigen::VectorXcd tilde = tilde_state(psi, h, energy, delta);
    const Eigen::VectorXd tilde_re = tilde.real();
    const double scale = 0.5 * delta * delta;
    const double var = (1.0 - psi.coefficients().dot(tilde_re)) / scale;
    // Re<psi|G|psi~> = <psi|G|Re psi~> for real psi.
    PairMatrix kernel = transition_2rdm(psi.basis(), psi.coefficients(), tilde_re);
    kernel.matrix() = (d2.matrix() - kernel.matrix()) / scale;
    return {var, std::move(kernel)};
}

}  // namespace

PairMatrix emulated_gradient_kernel(const StateVector& psi, const HamiltonianOperator& h,
                                    double delta) {
    const double e = expectation(psi, h);
    return measure_one(psi, h, e, compute_2rdm(psi), delta).kernel;
}

double richardson(std::span<const std::pair<double, double>> entries) {
    std::vector<double> d;
    std::vector<double> v;
    for (const auto& [delta, value] : entries) {
        d.push_back(delta);
        v.push_back(value);
    }
    return richardson<double>(d, v);
}

EmulatedMeasurement measure(const StateVector& psi, const HamiltonianOperator& h,
                            const MeasurementConfig& config) {
    config.validate();
    const double e = expectation(psi, h);
    const TwoRDM d2 = compute_2rdm(psi);
    const std::size_t order = static_cast<std::size_t>(config.richardson_order);
    const std::span<const double> used(config.deltas.data() + config.deltas.size() - order, order);

    std::vector<double> vars;
    std::vector<Eigen::MatrixXd> kernels;
    for (double delta : used) {
        auto one = measure_one(psi, h, e, d2, delta);
        vars.push_back(one.variance);
        kernels.push_back(std::move(one.kernel.matrix()));
    }
    if (order == 1) return {e, vars[0], PairMatrix(psi.basis().n_spatial(), kernels[0])};
    return {e, richardson<double>(used, vars),
            PairMatrix(psi.basis().n_spatial(), richardson<Eigen::MatrixXd>(used, kernels))};
}

double measure_variance(const StateVector& psi, const HamiltonianOperator& h,
                        const MeasurementConfig& config) {
    config.validate();
    const double e = expectation(psi, h);
    const std::size_t order = static_cast<std::size_t>(config.richardson_order);
    const std::span<const double> used(config.deltas.data() + config.deltas.size() - order, order);
    std::vector<double> vars;
    for (double delta : used) {
        const Eigen::VectorXcd tilde = tilde_state(psi, h, e, delta);
        vars.push_back((1.0 - psi.coefficients().dot(tilde.real())) / (0.5 * delta * delta));
    }
    if (order == 1) return vars[0];
    return richardson<double>(used, vars);
}

}  // namespace cqe
