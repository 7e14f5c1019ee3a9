// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file measurement.hpp
 * @brief Emulation of the ancilla-based measurement route for the variance
 *        and its gradient kernel.
 *
 * With |psi~> = exp(i delta (H - E)) |psi> and a real |psi>,
 *
 *     Var            ~ (1 - Re<psi|psi~>) / (delta^2 / 2)
 *     <psi|G (H-E)^2|psi> ~ (D - Re<psi|G|psi~>) / (delta^2 / 2)
 *
 * both with O(delta^2) error. Measurements are emulated at infinite shot
 * count: inner products are exact and only the delta discretization remains.
 * This is the only place complex amplitudes appear.
 */

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cqe/statevector.hpp"

namespace cqe {

struct MeasurementConfig {
    std::vector<double> deltas{0.1, 0.05, 0.025};
    /// Number of delta levels entering the extrapolation (the smallest ones).
    /// 1 disables extrapolation.
    int richardson_order = 3;

    void validate() const;
};

[[nodiscard]] Eigen::VectorXcd tilde_state(const StateVector& psi, const HamiltonianOperator& h,
                                           double energy, double delta);

[[nodiscard]] double emulated_variance(const StateVector& psi, const HamiltonianOperator& h,
                                       double delta);

/// Approximants of <psi| a+_p a+_q a_t a_s (H - E)^2 |psi> over canonical pairs.
[[nodiscard]] PairMatrix emulated_gradient_kernel(const StateVector& psi,
                                                  const HamiltonianOperator& h, double delta);

/// Neville extrapolation to delta -> 0 in the variable delta^2.
template <typename T>
[[nodiscard]] T richardson(std::span<const double> deltas, std::span<const T> values) {
    if (deltas.size() != values.size()) throw std::invalid_argument("richardson: size mismatch");
    if (deltas.size() < 2) throw std::invalid_argument("richardson needs at least two entries");
    const std::size_t n = deltas.size();
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h[i] = deltas[i] * deltas[i];
        for (std::size_t j = 0; j < i; ++j)
            if (h[j] == h[i]) throw std::invalid_argument("richardson: duplicate delta");
    }
    std::vector<T> p(values.begin(), values.end());
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const double hi = h[i];
            const double hj = h[i + level];
            // Interpolant through h_i..h_{i+level}, evaluated at h = 0.
            p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
        }
    }
    return p[0];
}

[[nodiscard]] double richardson(std::span<const std::pair<double, double>> entries);

struct EmulatedMeasurement {
    double energy;
    double variance;
    PairMatrix kernel;
};

/// Variance and gradient kernel over the delta ladder, extrapolated per config.
[[nodiscard]] EmulatedMeasurement measure(const StateVector& psi, const HamiltonianOperator& h,
                                          const MeasurementConfig& config);

/// Variance alone over the delta ladder, extrapolated per config.
[[nodiscard]] double measure_variance(const StateVector& psi, const HamiltonianOperator& h,
                                      const MeasurementConfig& config);

}  // namespace cqe
