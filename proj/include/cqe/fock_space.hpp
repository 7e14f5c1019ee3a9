// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock_space.hpp
 * @brief Occupation-number determinants, fixed-(N_alpha, N_beta) sector bases,
 *        and sign-correct application of ladder-operator strings.
 *
 * Phase convention: applying a_p or a_p^dagger contributes
 * (-1)^(number of occupied spin orbitals with index < p), evaluated on the
 * intermediate occupation. Operator strings are applied right to left.
 */

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cqe {

/// Occupation bitstring over at most 64 spin orbitals.
struct Determinant {
    std::uint64_t bits = 0;

    [[nodiscard]] constexpr bool occupied(int p) const noexcept { return (bits >> p) & 1U; }
    [[nodiscard]] constexpr int count() const noexcept { return std::popcount(bits); }
    /// Number of occupied spin orbitals with index strictly below p.
    [[nodiscard]] constexpr int count_below(int p) const noexcept {
        return std::popcount(bits & ((std::uint64_t{1} << p) - 1));
    }

    [[nodiscard]] static Determinant from_orbitals(std::span<const int> spin_orbitals);
    [[nodiscard]] std::vector<int> orbitals() const;

    friend constexpr auto operator<=>(const Determinant&, const Determinant&) = default;
};

struct LadderOp {
    bool create;
    int orbital;
};

struct PhasedDeterminant {
    Determinant det;
    int phase;  // +1 or -1
};

/// Applies the string ops[0] ops[1] ... ops[k-1] to det (ops[k-1] acts first).
/// Returns nullopt when the string annihilates the determinant.
[[nodiscard]] std::optional<PhasedDeterminant> apply_string(Determinant det,
                                                            std::span<const LadderOp> ops);

/// Applies a^dagger_{c0} a^dagger_{c1} ... a_{a0} a_{a1} ..., lists in written order.
[[nodiscard]] std::optional<PhasedDeterminant> apply_excitation(Determinant det,
                                                                std::span<const int> create,
                                                                std::span<const int> annihilate);

enum class PairSpin : std::uint8_t { AlphaAlpha, AlphaBeta, BetaBeta };

/// Canonical spin-orbital pairs (p < q), block spin layout.
class PairSpace {
public:
    explicit PairSpace(int n_spatial);

    [[nodiscard]] int n_spatial() const noexcept { return n_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(pairs_.size()); }
    [[nodiscard]] std::pair<int, int> pair(int index) const { return pairs_[index]; }
    [[nodiscard]] PairSpin spin(int index) const { return spins_[index]; }
    /// Index of the canonical pair {p, q} (p != q) and the sign relating (p, q) to it.
    [[nodiscard]] std::pair<int, int> index_of(int p, int q) const;

    friend bool operator==(const PairSpace& a, const PairSpace& b) noexcept { return a.n_ == b.n_; }

private:
    int n_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<PairSpin> spins_;
    std::vector<int> lookup_;  // (2n)^2 table, -1 on the diagonal
};

/// One nonzero matrix element of a^dagger_p a^dagger_q a_t a_s inside a sector:
/// <target| Gamma_{create, annihilate} |source> = sign.
struct PairTransition {
    std::uint32_t source;
    std::uint32_t target;
    std::uint16_t create;
    std::uint16_t annihilate;
    std::int8_t sign;
};

class SectorBasis {
public:
    [[nodiscard]] int n_spatial() const noexcept { return n_; }
    [[nodiscard]] int n_alpha() const noexcept { return n_alpha_; }
    [[nodiscard]] int n_beta() const noexcept { return n_beta_; }
    [[nodiscard]] int n_electrons() const noexcept { return n_alpha_ + n_beta_; }
    [[nodiscard]] std::size_t size() const noexcept { return dets_.size(); }
    [[nodiscard]] const std::vector<Determinant>& determinants() const noexcept { return dets_; }
    [[nodiscard]] Determinant operator[](std::size_t i) const { return dets_[i]; }
    [[nodiscard]] std::optional<std::size_t> index_of(Determinant d) const;

    [[nodiscard]] const PairSpace& pairs() const noexcept { return pairs_; }
    /// All S_z-conserving pair transitions within the sector, grouped by source.
    [[nodiscard]] const std::vector<PairTransition>& pair_transitions() const noexcept {
        return transitions_;
    }

    [[nodiscard]] bool same_sector(const SectorBasis& other) const noexcept {
        return n_ == other.n_ && n_alpha_ == other.n_alpha_ && n_beta_ == other.n_beta_;
    }

private:
    friend std::shared_ptr<const SectorBasis> enumerate_sector(int, int, int);
    SectorBasis(int n_spatial, int n_alpha, int n_beta);

    int n_;
    int n_alpha_;
    int n_beta_;
    std::vector<Determinant> dets_;
    PairSpace pairs_;
    std::vector<PairTransition> transitions_;
};

using SectorPtr = std::shared_ptr<const SectorBasis>;

/// All determinants with the given per-spin occupations, ascending by bitmask.
[[nodiscard]] SectorPtr enumerate_sector(int n_spatial, int n_alpha, int n_beta);

/// Determinant from spatial occupation lists (alpha block, then beta block).
[[nodiscard]] Determinant make_determinant(int n_spatial, std::span<const int> alpha,
                                           std::span<const int> beta);

}  // namespace cqe
