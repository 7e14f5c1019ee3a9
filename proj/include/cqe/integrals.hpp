// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file integrals.hpp
 * @brief Molecular integrals over spatial orbitals and FCIDUMP I/O.
 *
 * Two-electron integrals are stored in chemists' notation (pq|rs) with all
 * eight permutational partners filled. Spin orbitals use the block layout:
 * indices [0, n) are alpha over spatial orbital p, [n, 2n) are beta.
 */

#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cqe {

/// Raised for malformed FCIDUMP input. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class MolecularIntegrals {
public:
    MolecularIntegrals(int n_spatial, int n_electrons, int ms2 = 0);

    [[nodiscard]] int n_spatial() const noexcept { return n_; }
    [[nodiscard]] int n_spin_orbitals() const noexcept { return 2 * n_; }
    [[nodiscard]] int n_electrons() const noexcept { return n_electrons_; }
    /// 2*S_z as reported by the file header; informational only.
    [[nodiscard]] int ms2() const noexcept { return ms2_; }

    [[nodiscard]] double core_energy() const noexcept { return core_energy_; }
    [[nodiscard]] const Eigen::MatrixXd& h() const noexcept { return h_; }
    [[nodiscard]] double h(int p, int q) const { return h_(p, q); }

    /// (pq|rs) in chemists' notation, spatial indices.
    [[nodiscard]] double eri(int p, int q, int r, int s) const {
        return v_[flat(p, q, r, s)];
    }

    void set_core_energy(double e) noexcept { core_energy_ = e; }
    /// Sets h_pq and h_qp.
    void set_h(int p, int q, double value);
    /// Sets (pq|rs) and its seven symmetry partners.
    void set_eri(int p, int q, int r, int s, double value);

private:
    [[nodiscard]] std::size_t flat(int p, int q, int r, int s) const noexcept {
        const auto n = static_cast<std::size_t>(n_);
        return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
    }

    int n_;
    int n_electrons_;
    int ms2_;
    double core_energy_ = 0.0;
    Eigen::MatrixXd h_;
    std::vector<double> v_;
};

/// Parses Molpro-style FCIDUMP text. Throws ParseError on malformed input.
[[nodiscard]] MolecularIntegrals parse_fcidump(std::istream& in);
[[nodiscard]] MolecularIntegrals parse_fcidump_string(const std::string& text);
[[nodiscard]] MolecularIntegrals read_fcidump(const std::string& path);

/// Writes unique integrals (i>=j, k>=l, ij>=kl) with round-trip precision.
[[nodiscard]] std::string write_fcidump(const MolecularIntegrals& integrals,
                                        double threshold = 0.0);

/// One-electron integral lifted to spin orbitals; zero across spin blocks.
[[nodiscard]] double spin_orbital_h(const MolecularIntegrals& integrals, int p, int q);

/// Physicists' <pq|rs> over spin orbitals, zero unless spins of (p,r) and (q,s) match.
[[nodiscard]] double spin_orbital_eri(const MolecularIntegrals& integrals, int p, int q,
                                      int r, int s);

}  // namespace cqe
