// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqe/diagnostics.hpp"

namespace cqe {

double cse_norm(const StateVector& psi, const HamiltonianOperator& h) {
    require_same_basis(h.basis(), psi.basis());
    const Eigen::VectorXd& c = psi.coefficients();
    const Eigen::VectorXd hc = h.apply(c);
    const Eigen::VectorXd r = hc - c.dot(hc) * c;
    return transition_2rdm(psi.basis(), c, r).matrix().squaredNorm();
}

}  // namespace cqe
