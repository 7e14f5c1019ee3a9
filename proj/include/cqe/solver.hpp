// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file solver.hpp
 * @brief Variance-based contracted quantum eigensolver.
 *
 * Each iteration applies a fresh anti-Hermitian two-body exponential to the
 * current state, |psi_{m+1}> = exp(F_{m+1}) |psi_m>, where F_{m+1} is a
 * quasi-Newton direction for the energy variance scaled by an exact line
 * search. Earlier generators are never re-optimized.
 */

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqe/measurement.hpp"
#include "cqe/statevector.hpp"
#include "cqe/two_body.hpp"

namespace cqe {

enum class GradientMode { Exact, Emulated };

struct SolverConfig {
    double epsilon = 1e-6;  // variance tolerance, hartree^2
    int max_iterations = 200;
    /// Upper bound on the Frobenius norm of the applied generator alpha*d.
    double alpha_max = 1.0;
    double line_search_tol = 1e-10;
    GradientMode gradient_mode = GradientMode::Exact;
    MeasurementConfig measurement;

    void validate() const;
};

struct ConvergenceRecord {
    int iteration = 0;
    double energy = 0.0;
    double variance = 0.0;
    double cse_norm = 0.0;
    double gradient_norm = 0.0;
    double step_length = 0.0;  // Frobenius norm of the generator applied this iteration
    double sz = 0.0;
    double s_squared = 0.0;
};

enum class SolveStatus { Converged, MaxIterations, Stagnated };

[[nodiscard]] const char* to_string(SolveStatus s) noexcept;

struct SolveResult {
    StateVector state;
    ConvergenceRecord initial;            // diagnostics of the starting state
    std::vector<ConvergenceRecord> trace;  // one record per accepted iteration
    SolveStatus status = SolveStatus::MaxIterations;
    std::string message;

    [[nodiscard]] bool converged() const noexcept { return status == SolveStatus::Converged; }
    [[nodiscard]] int iterations() const noexcept { return static_cast<int>(trace.size()); }
    [[nodiscard]] const ConvergenceRecord& final_record() const {
        return trace.empty() ? initial : trace.back();
    }
};

/// Initial guess: one determinant, or (|d> +/- |d_bar>)/sqrt(2) with d_bar
/// the determinant with alpha and beta occupations swapped.
struct OccupationSpec {
    enum class Combo { None, Singlet, Triplet };
    std::vector<int> alpha;
    std::vector<int> beta;
    Combo combo = Combo::None;
};

[[nodiscard]] StateVector initial_state(const SectorPtr& basis, const OccupationSpec& spec);

/// Gradient of the variance with respect to anti-Hermitian generator
/// coefficients, so that d/da Var(exp(a B) psi)|_0 = gradient.dot(B).
[[nodiscard]] TwoBodyCoefficients variance_gradient(const StateVector& psi,
                                                    const HamiltonianOperator& h);

/// Assembles the projected gradient from the kernel <psi|G_IJ (H-E)^2|psi>,
/// the 2-RDM and the variance.
[[nodiscard]] TwoBodyCoefficients gradient_from_kernel(const PairMatrix& kernel,
                                                       const TwoRDM& d2, double variance);

struct BfgsMemory {
    TwoBodyCoefficients step;        // s = alpha * d
    TwoBodyCoefficients gradient_change;  // y = g_new - g_old
};

/// One-pair limited-memory BFGS direction. Clears `memory` on curvature failure.
[[nodiscard]] TwoBodyCoefficients bfgs_direction(const TwoBodyCoefficients& gradient,
                                                 std::optional<BfgsMemory>& memory);

class LineSearchStagnation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LineSearchResult {
    double alpha;
    double value;
    StateVector state;
    TwoBodyCoefficients direction;  // possibly negated input direction
};

using Objective = std::function<double(const StateVector&)>;

/// Minimizes objective(exp(alpha * direction) psi) over alpha in
/// [0, alpha_max / ||direction||]. `slope` is the directional derivative at
/// alpha = 0; a positive slope flips the direction first.
[[nodiscard]] LineSearchResult line_search(const StateVector& psi,
                                           const TwoBodyCoefficients& direction,
                                           const Objective& objective, double slope,
                                           const SolverConfig& config);

/// Exact-variance line search.
[[nodiscard]] LineSearchResult line_search(const StateVector& psi,
                                           const TwoBodyCoefficients& direction,
                                           const HamiltonianOperator& h,
                                           const SolverConfig& config = {});

[[nodiscard]] SolveResult solve(const HamiltonianOperator& h, const StateVector& initial,
                                const SolverConfig& config);

}  // namespace cqe
