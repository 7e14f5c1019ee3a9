// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file runner.hpp
 * @brief Orchestration behind the command-line tool: load integrals, run
 *        FCI / CQE / bond scans / delta studies, and build result documents.
 *
 * Result documents are JSON objects with `config`, `summary` and `trace`
 * keys; CSV output flattens the trace (or the table for scans and delta
 * studies).
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cqe/fci.hpp"
#include "cqe/solver.hpp"

namespace cqe {

enum class ExitCode : int {
    Success = 0,
    Usage = 1,
    Parse = 2,
    NonConvergence = 3,
    Io = 4,
};

enum class OutputFormat { Json, Csv };

struct RunSpec {
    std::string fcidump_path;
    OccupationSpec occupation;
    SolverConfig solver;
    OutputFormat format = OutputFormat::Json;
    std::string out_path;  // empty: standard output
};

struct RunOutcome {
    ExitCode code = ExitCode::Success;
    nlohmann::json document;
    std::string error;  // set for parse / I/O failures
};

/// Solves one state and reports it against exact diagonalization.
[[nodiscard]] RunOutcome run_solve(const RunSpec& spec);
/// Same, on already-loaded integrals.
[[nodiscard]] RunOutcome run_solve(const RunSpec& spec, const MolecularIntegrals& integrals);

/// Exact spectrum of one sector with spin labels.
[[nodiscard]] RunOutcome run_fci(const std::string& fcidump_path, int n_alpha, int n_beta);

/// One row per (geometry, state). Failing geometries are flagged; the scan continues.
[[nodiscard]] RunOutcome run_scan(const RunSpec& tmpl, const std::vector<std::string>& fcidump_paths,
                                  const std::vector<OccupationSpec>& states);

/// Emulated-vs-exact variance over the delta ladder on the initial state
/// (or on the converged state when `converge_first`).
[[nodiscard]] RunOutcome run_delta_study(const RunSpec& spec, bool converge_first = false);

/// Serializes a document in the requested format.
[[nodiscard]] std::string render(const nlohmann::json& document, OutputFormat format);

/// Writes to `path`, or standard output when empty. Returns false on I/O failure.
bool write_output(const std::string& text, const std::string& path);

[[nodiscard]] nlohmann::json to_json(const SolverConfig& config);
[[nodiscard]] nlohmann::json to_json(const OccupationSpec& spec);
[[nodiscard]] nlohmann::json to_json(const ConvergenceRecord& record);

/// Parses "a0,a1/b0,b1[/singlet|triplet]".
[[nodiscard]] OccupationSpec parse_state(const std::string& text);
[[nodiscard]] std::string format_state(const OccupationSpec& spec);

}  // namespace cqe
