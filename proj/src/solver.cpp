// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqe/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "cqe/diagnostics.hpp"

namespace cqe {

void SolverConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(alpha_max > 0.0)) throw std::invalid_argument("alpha_max must be positive");
    if (!(line_search_tol > 0.0)) throw std::invalid_argument("line_search_tol must be positive");
    if (max_iterations < 0) throw std::invalid_argument("max_iterations must be non-negative");
    if (gradient_mode == GradientMode::Emulated) measurement.validate();
}

const char* to_string(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterations: return "max_iterations";
        case SolveStatus::Stagnated: return "stagnated";
    }
    return "unknown";
}

StateVector initial_state(const SectorPtr& basis, const OccupationSpec& spec) {
    const int n = basis->n_spatial();
    if (static_cast<int>(spec.alpha.size()) != basis->n_alpha() ||
        static_cast<int>(spec.beta.size()) != basis->n_beta())
        throw std::invalid_argument("occupation lists do not match the sector's electron counts");

    const Determinant d = make_determinant(n, spec.alpha, spec.beta);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis->size()));
    c(static_cast<Eigen::Index>(*basis->index_of(d))) = 1.0;
    if (spec.combo != OccupationSpec::Combo::None) {
        if (basis->n_alpha() != basis->n_beta())
            throw std::invalid_argument("spin-swapped combinations need N_alpha == N_beta");
        const Determinant swapped = make_determinant(n, spec.beta, spec.alpha);
        const double sign = spec.combo == OccupationSpec::Combo::Singlet ? 1.0 : -1.0;
        if (swapped == d && sign < 0.0)
            throw std::invalid_argument("triplet combination of a closed-shell determinant is null");
        c(static_cast<Eigen::Index>(*basis->index_of(swapped))) += sign;
    }
    return StateVector(basis, c / c.norm());
}

TwoBodyCoefficients gradient_from_kernel(const PairMatrix& kernel, const TwoRDM& d2,
                                         double variance) {
    // raw(I,J) = 2 <psi|(G_IJ - D_IJ)(H-E)^2|psi> is the derivative with respect
    // to the coefficient F_JI, so the gradient over F is raw^T.
    const Eigen::MatrixXd raw = 2.0 * (kernel.matrix() - variance * d2.matrix());
    TwoBodyCoefficients g(kernel.n_spatial(), raw.transpose());
    return g.anti_hermitian_part().sz_projected();
}

TwoBodyCoefficients variance_gradient(const StateVector& psi, const HamiltonianOperator& h) {
    require_same_basis(h.basis(), psi.basis());
    const Eigen::VectorXd& c = psi.coefficients();
    const Eigen::VectorXd hc = h.apply(c);
    const double e = c.dot(hc);
    const Eigen::VectorXd r = hc - e * c;
    const Eigen::VectorXd w = h.apply(r) - e * r;  // (H - E)^2 psi
    const PairMatrix kernel = transition_2rdm(psi.basis(), c, w);
    return gradient_from_kernel(kernel, compute_2rdm(psi), c.dot(w));
}

TwoBodyCoefficients bfgs_direction(const TwoBodyCoefficients& g, std::optional<BfgsMemory>& memory) {
    if (g.norm() == 0.0) return TwoBodyCoefficients(g.n_spatial());
    if (!memory) return -g;

    const auto& s = memory->step;
    const auto& y = memory->gradient_change;
    const double sy = s.dot(y);
    const double yy = y.dot(y);
    if (!(sy > 0.0) || yy == 0.0) {
        memory.reset();
        return -g;
    }
    const double rho = 1.0 / sy;
    const double a = rho * s.dot(g);
    TwoBodyCoefficients q = g - a * y;
    TwoBodyCoefficients r = (sy / yy) * q;
    const double b = rho * y.dot(r);
    r += (a - b) * s;
    return -r;
}

LineSearchResult line_search(const StateVector& psi, const TwoBodyCoefficients& direction,
                             const Objective& objective, double slope,
                             const SolverConfig& config) {
    const double f0 = objective(psi);
    const double dnorm = direction.norm();
    if (dnorm == 0.0) return {0.0, f0, psi, direction};

    const TwoBodyCoefficients d = slope > 0.0 ? -direction : direction;
    const double cap = config.alpha_max / dnorm;

    double best_alpha = 0.0;
    double best_value = f0;
    auto f = [&](double alpha) {
        const double v = objective(exp_apply(d, alpha, psi));
        if (v < best_value) {
            best_value = v;
            best_alpha = alpha;
        }
        return v;
    };

    constexpr double kMinAlpha = 1e-12;
    double lo = 0.0;
    double hi = 0.0;
    double cur = std::min(1.0, cap);
    double fcur = f(cur);
    if (fcur < f0) {
        double prev = 0.0;
        hi = cur;
        while (cur < cap) {
            const double next = std::min(2.0 * cur, cap);
            const double fnext = f(next);
            hi = next;
            if (fnext >= fcur) break;
            prev = cur;
            cur = next;
            fcur = fnext;
        }
        lo = prev;
    } else {
        hi = cur;
        for (;;) {
            cur *= 0.25;
            if (cur < kMinAlpha)
                throw LineSearchStagnation("line search found no decrease of the objective");
            if (f(cur) < f0) break;
            hi = cur;
        }
        lo = 0.0;
    }

    // Brent refinement to a relative step tolerance of about line_search_tol.
    const int bits = std::clamp(
        static_cast<int>(std::ceil(1.0 - std::log2(config.line_search_tol))), 8,
        std::numeric_limits<double>::digits / 2 + 8);
    std::uintmax_t max_iter = 200;
    boost::math::tools::brent_find_minima(f, lo, hi, bits, max_iter);

    if (best_alpha == 0.0) throw LineSearchStagnation("line search found no decrease of the objective");
    return {best_alpha, best_value, exp_apply(d, best_alpha, psi), d};
}

LineSearchResult line_search(const StateVector& psi, const TwoBodyCoefficients& direction,
                             const HamiltonianOperator& h, const SolverConfig& config) {
    const double slope = variance_gradient(psi, h).dot(direction);
    return line_search(
        psi, direction, [&](const StateVector& s) { return variance(s, h); }, slope, config);
}

namespace {

struct Evaluation {
    double energy;
    double variance;
    TwoBodyCoefficients gradient;
};

Evaluation evaluate(const StateVector& psi, const HamiltonianOperator& h, const SolverConfig& config) {
    if (config.gradient_mode == GradientMode::Emulated) {
        auto m = measure(psi, h, config.measurement);
        auto g = gradient_from_kernel(m.kernel, compute_2rdm(psi), m.variance);
        return {m.energy, m.variance, std::move(g)};
    }
    return {expectation(psi, h), variance(psi, h), variance_gradient(psi, h)};
}

ConvergenceRecord make_record(int iteration, const StateVector& psi, const HamiltonianOperator& h,
                              const Evaluation& ev, double step) {
    const auto spin = spin_expectations(psi);
    return {iteration,   ev.energy, ev.variance, cse_norm(psi, h), ev.gradient.norm(),
            step,        spin.sz,   spin.s_squared};
}

}  // namespace

SolveResult solve(const HamiltonianOperator& h, const StateVector& initial, const SolverConfig& config) {
    config.validate();
    require_same_basis(h.basis(), initial.basis());
    if (std::abs(initial.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("initial state must be normalized");

    Objective objective;
    if (config.gradient_mode == GradientMode::Emulated) {
        objective = [&](const StateVector& s) { return measure_variance(s, h, config.measurement); };
    } else {
        objective = [&](const StateVector& s) { return variance(s, h); };
    }

    StateVector psi = initial;
    Evaluation ev = evaluate(psi, h, config);
    SolveResult result{psi, make_record(0, psi, h, ev, 0.0), {}, SolveStatus::MaxIterations, {}};

    std::optional<BfgsMemory> memory;
    for (int m = 1;; ++m) {
        if (ev.variance < config.epsilon) {
            result.status = SolveStatus::Converged;
            break;
        }
        if (m > config.max_iterations) {
            result.message = "variance above tolerance after max_iterations";
            break;
        }
        TwoBodyCoefficients d = bfgs_direction(ev.gradient, memory);
        double slope = ev.gradient.dot(d);
        if (slope >= 0.0) {
            memory.reset();
            d = -ev.gradient;
            slope = ev.gradient.dot(d);
        }
        if (d.norm() == 0.0) {
            result.status = SolveStatus::Stagnated;
            result.message = "zero gradient with variance above tolerance";
            break;
        }

        std::optional<LineSearchResult> ls;
        try {
            ls = line_search(psi, d, objective, slope, config);
        } catch (const LineSearchStagnation& e) {
            result.status = SolveStatus::Stagnated;
            result.message = e.what();
            break;
        }

        TwoBodyCoefficients step = ls->alpha * ls->direction;
        psi = ls->state;
        Evaluation next = evaluate(psi, h, config);
        memory = BfgsMemory{step, next.gradient - ev.gradient};
        ev = std::move(next);
        result.trace.push_back(make_record(m, psi, h, ev, step.norm()));
    }
    result.state = psi;
    return result;
}

}  // namespace cqe
