// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqe/integrals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

namespace cqe {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("FCIDUMP line " + std::to_string(line) + ": " + what), line_(line) {}

MolecularIntegrals::MolecularIntegrals(int n_spatial, int n_electrons, int ms2)
    : n_(n_spatial), n_electrons_(n_electrons), ms2_(ms2) {
    if (n_spatial < 1) throw std::invalid_argument("n_spatial must be >= 1");
    if (n_electrons < 0 || n_electrons > 2 * n_spatial)
        throw std::invalid_argument("n_electrons must lie in [0, 2*n_spatial]");
    h_ = Eigen::MatrixXd::Zero(n_, n_);
    const auto n = static_cast<std::size_t>(n_);
    v_.assign(n * n * n * n, 0.0);
}

void MolecularIntegrals::set_h(int p, int q, double value) {
    h_(p, q) = value;
    h_(q, p) = value;
}

void MolecularIntegrals::set_eri(int p, int q, int r, int s, double value) {
    for (auto [a, b] : {std::pair{p, q}, std::pair{q, p}}) {
        for (auto [c, d] : {std::pair{r, s}, std::pair{s, r}}) {
            v_[flat(a, b, c, d)] = value;
            v_[flat(c, d, a, b)] = value;
        }
    }
}

namespace {

std::optional<int> header_int(const std::string& header, const std::string& key) {
    const std::regex re("\\b" + key + "\\s*=\\s*(-?[0-9]+)", std::regex::icase);
    std::smatch m;
    if (std::regex_search(header, m, re)) return std::stoi(m[1].str());
    return std::nullopt;
}

bool is_header_end(const std::string& line) {
    std::string upper = line;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper.find("&END") != std::string::npos) return true;
    const auto first = upper.find_first_not_of(" \t\r");
    return first != std::string::npos && upper[first] == '/';
}

// Canonical representative of the index tuple under the integral's symmetry group.
std::array<int, 4> canonical(int i, int j, int k, int l) {
    if (i < j) std::swap(i, j);
    if (k < l) std::swap(k, l);
    if (std::pair{i, j} < std::pair{k, l}) {
        std::swap(i, k);
        std::swap(j, l);
    }
    return {i, j, k, l};
}

}  // namespace

MolecularIntegrals parse_fcidump(std::istream& in) {
    std::string line;
    std::string header;
    std::size_t line_no = 0;
    bool header_done = false;
    while (std::getline(in, line)) {
        ++line_no;
        header += line;
        header += ' ';
        if (is_header_end(line)) {
            header_done = true;
            break;
        }
    }
    if (!header_done) throw ParseError(line_no, "missing namelist terminator (&END or /)");

    const auto norb = header_int(header, "NORB");
    const auto nelec = header_int(header, "NELEC");
    if (!norb) throw ParseError(line_no, "header lacks NORB");
    if (!nelec) throw ParseError(line_no, "header lacks NELEC");
    if (*norb < 1) throw ParseError(line_no, "NORB must be positive");
    if (*nelec < 0 || *nelec > 2 * *norb) throw ParseError(line_no, "NELEC out of range");
    // ORBSYM and ISYM are accepted and ignored.
    MolecularIntegrals ints(*norb, *nelec, header_int(header, "MS2").value_or(0));

    std::map<std::array<int, 4>, double> seen;
    while (std::getline(in, line)) {
        ++line_no;
        std::replace_if(
            line.begin(), line.end(), [](char c) { return c == 'D' || c == 'd'; }, 'E');
        std::istringstream fields(line);
        double value = 0.0;
        if (!(fields >> value)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError(line_no, "expected a numeric value");
        }
        std::array<int, 4> idx{};
        for (auto& x : idx) {
            if (!(fields >> x)) throw ParseError(line_no, "expected four integer indices");
        }
        std::string trailing;
        if (fields >> trailing) throw ParseError(line_no, "unexpected trailing field '" + trailing + "'");
        if (!std::isfinite(value)) throw ParseError(line_no, "non-finite integral value");
        for (int x : idx) {
            if (x < 0 || x > *norb)
                throw ParseError(line_no, "index " + std::to_string(x) + " outside [0, NORB]");
        }
        const auto [i, j, k, l] = idx;
        std::array<int, 4> key{};
        if (i == 0 && j == 0 && k == 0 && l == 0) {
            key = {0, 0, 0, 0};
        } else if (i > 0 && j == 0 && k == 0 && l == 0) {
            continue;  // orbital energy record
        } else if (i > 0 && j > 0 && k == 0 && l == 0) {
            key = {std::max(i, j), std::min(i, j), 0, 0};
        } else if (i > 0 && j > 0 && k > 0 && l > 0) {
            key = canonical(i, j, k, l);
        } else {
            throw ParseError(line_no, "unrecognised index pattern");
        }

        if (auto it = seen.find(key); it != seen.end()) {
            if (std::abs(it->second - value) > 1e-12)
                throw ParseError(line_no, "conflicting duplicate entry");
            continue;
        }
        seen.emplace(key, value);

        if (key[0] == 0) {
            ints.set_core_energy(value);
        } else if (key[2] == 0) {
            ints.set_h(i - 1, j - 1, value);
        } else {
            ints.set_eri(i - 1, j - 1, k - 1, l - 1, value);
        }
    }
    return ints;
}

MolecularIntegrals parse_fcidump_string(const std::string& text) {
    std::istringstream in(text);
    return parse_fcidump(in);
}

MolecularIntegrals read_fcidump(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open FCIDUMP file: " + path);
    return parse_fcidump(in);
}

std::string write_fcidump(const MolecularIntegrals& ints, double threshold) {
    const int n = ints.n_spatial();
    std::ostringstream out;
    out << "&FCI NORB=" << n << ",NELEC=" << ints.n_electrons() << ",MS2=" << ints.ms2()
        << ",\n ORBSYM=";
    for (int p = 0; p < n; ++p) out << "1,";
    out << "\n ISYM=1,\n&END\n";

    char buf[96];
    auto emit = [&](double v, int i, int j, int k, int l) {
        std::snprintf(buf, sizeof buf, "%.17g %d %d %d %d\n", v, i, j, k, l);
        out << buf;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l <= k; ++l) {
                    if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
                    const double v = ints.eri(i, j, k, l);
                    if (std::abs(v) > threshold) emit(v, i + 1, j + 1, k + 1, l + 1);
                }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = ints.h(i, j);
            if (std::abs(v) > threshold) emit(v, i + 1, j + 1, 0, 0);
        }
    emit(ints.core_energy(), 0, 0, 0, 0);
    return out.str();
}

double spin_orbital_h(const MolecularIntegrals& ints, int p, int q) {
    const int n = ints.n_spatial();
    if (p < 0 || q < 0 || p >= 2 * n || q >= 2 * n)
        throw std::invalid_argument("spin-orbital index out of range");
    if ((p < n) != (q < n)) return 0.0;
    return ints.h(p % n, q % n);
}

double spin_orbital_eri(const MolecularIntegrals& ints, int p, int q, int r, int s) {
    const int n = ints.n_spatial();
    if ((p < n) != (r < n) || (q < n) != (s < n)) return 0.0;
    return ints.eri(p % n, r % n, q % n, s % n);
}

}  // namespace cqe
