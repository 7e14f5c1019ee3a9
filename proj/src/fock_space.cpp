// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqe/fock_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace cqe {

Determinant Determinant::from_orbitals(std::span<const int> spin_orbitals) {
    Determinant d;
    for (int p : spin_orbitals) {
        if (p < 0 || p >= 64) throw std::invalid_argument("spin-orbital index out of range");
        if (d.occupied(p)) throw std::invalid_argument("spin orbital listed twice");
        d.bits |= std::uint64_t{1} << p;
    }
    return d;
}

std::vector<int> Determinant::orbitals() const {
    std::vector<int> out;
    for (auto b = bits; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
}

std::optional<PhasedDeterminant> apply_string(Determinant det, std::span<const LadderOp> ops) {
    int phase = 1;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const int p = it->orbital;
        if (det.occupied(p) == it->create) return std::nullopt;
        if (det.count_below(p) & 1) phase = -phase;
        det.bits ^= std::uint64_t{1} << p;
    }
    return PhasedDeterminant{det, phase};
}

std::optional<PhasedDeterminant> apply_excitation(Determinant det, std::span<const int> create,
                                                  std::span<const int> annihilate) {
    std::vector<LadderOp> ops;
    ops.reserve(create.size() + annihilate.size());
    for (int p : create) ops.push_back({true, p});
    for (int p : annihilate) ops.push_back({false, p});
    return apply_string(det, ops);
}

PairSpace::PairSpace(int n_spatial) : n_(n_spatial) {
    const int m = 2 * n_;
    lookup_.assign(static_cast<std::size_t>(m) * m, -1);
    for (int p = 0; p < m; ++p) {
        for (int q = p + 1; q < m; ++q) {
            const int idx = static_cast<int>(pairs_.size());
            pairs_.emplace_back(p, q);
            spins_.push_back(q < n_ ? PairSpin::AlphaAlpha
                                    : (p < n_ ? PairSpin::AlphaBeta : PairSpin::BetaBeta));
            lookup_[p * m + q] = idx;
            lookup_[q * m + p] = idx;
        }
    }
}

std::pair<int, int> PairSpace::index_of(int p, int q) const {
    const int m = 2 * n_;
    if (p < 0 || q < 0 || p >= m || q >= m || p == q)
        throw std::invalid_argument("invalid spin-orbital pair");
    return {lookup_[p * m + q], p < q ? 1 : -1};
}

SectorBasis::SectorBasis(int n_spatial, int n_alpha, int n_beta)
    : n_(n_spatial), n_alpha_(n_alpha), n_beta_(n_beta), pairs_(n_spatial) {}

std::optional<std::size_t> SectorBasis::index_of(Determinant d) const {
    const auto it = std::lower_bound(dets_.begin(), dets_.end(), d);
    if (it == dets_.end() || *it != d) return std::nullopt;
    return static_cast<std::size_t>(it - dets_.begin());
}

namespace {

std::vector<std::uint64_t> strings_with_count(int n, int k) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        if (std::popcount(s) == k) out.push_back(s);
    }
    return out;
}

}  // namespace

SectorPtr enumerate_sector(int n_spatial, int n_alpha, int n_beta) {
    if (n_spatial < 1 || 2 * n_spatial > 64) throw std::invalid_argument("n_spatial out of range");
    if (n_alpha < 0 || n_beta < 0 || n_alpha > n_spatial || n_beta > n_spatial)
        throw std::invalid_argument("electron counts out of range for the sector");

    auto basis = std::shared_ptr<SectorBasis>(new SectorBasis(n_spatial, n_alpha, n_beta));
    for (auto a : strings_with_count(n_spatial, n_alpha)) {
        for (auto b : strings_with_count(n_spatial, n_beta)) {
            basis->dets_.push_back(Determinant{a | (b << n_spatial)});
        }
    }
    std::sort(basis->dets_.begin(), basis->dets_.end());

    const auto& pairs = basis->pairs_;
    for (std::size_t src = 0; src < basis->dets_.size(); ++src) {
        const Determinant d = basis->dets_[src];
        for (int j = 0; j < pairs.size(); ++j) {
            const auto [s, t] = pairs.pair(j);
            if (!d.occupied(s) || !d.occupied(t)) continue;
            for (int i = 0; i < pairs.size(); ++i) {
                if (pairs.spin(i) != pairs.spin(j)) continue;
                const auto [p, q] = pairs.pair(i);
                const int create[] = {p, q};
                const int annihilate[] = {t, s};
                const auto res = apply_excitation(d, create, annihilate);
                if (!res) continue;
                const auto tgt = basis->index_of(res->det);
                basis->transitions_.push_back({static_cast<std::uint32_t>(src),
                                               static_cast<std::uint32_t>(*tgt),
                                               static_cast<std::uint16_t>(i),
                                               static_cast<std::uint16_t>(j),
                                               static_cast<std::int8_t>(res->phase)});
            }
        }
    }
    return basis;
}

Determinant make_determinant(int n_spatial, std::span<const int> alpha, std::span<const int> beta) {
    std::vector<int> so;
    for (int p : alpha) {
        if (p < 0 || p >= n_spatial) throw std::invalid_argument("alpha orbital out of range");
        so.push_back(p);
    }
    for (int p : beta) {
        if (p < 0 || p >= n_spatial) throw std::invalid_argument("beta orbital out of range");
        so.push_back(p + n_spatial);
    }
    return Determinant::from_orbitals(so);
}

}  // namespace cqe
