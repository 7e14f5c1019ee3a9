// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "cqe/statevector.hpp"

namespace cqe {

/// Least-squares residual of the contracted Schrodinger equation:
/// sum over S_z-conserving canonical (pq, st) of <psi|a+_p a+_q a_t a_s (H - E)|psi>^2.
[[nodiscard]] double cse_norm(const StateVector& psi, const HamiltonianOperator& h);

}  // namespace cqe
