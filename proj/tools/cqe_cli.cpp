// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: fci | solve | scan | delta-study.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cqe/runner.hpp"

namespace {

struct Options {
    std::vector<std::string> fcidumps;
    std::vector<int> alpha;
    std::vector<int> beta;
    std::string combo;
    std::vector<std::string> states;
    double tol = 1e-6;
    int max_iter = 200;
    double alpha_max = 1.0;
    double line_search_tol = 1e-10;
    std::string gradient = "exact";
    std::vector<double> deltas;
    int richardson = 0;
    std::string out;
    std::string format = "json";
    std::vector<int> sector;
    bool converge = false;
};

void add_common(CLI::App* cmd, Options& o, bool many_files) {
    if (many_files)
        cmd->add_option("--fcidump", o.fcidumps, "FCIDUMP files, one per geometry")->required();
    else
        cmd->add_option("--fcidump", o.fcidumps, "FCIDUMP file")->required()->expected(1);
    cmd->add_option("--out", o.out, "Output path (default: stdout)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_state(CLI::App* cmd, Options& o) {
    cmd->add_option("--alpha", o.alpha, "Occupied alpha spatial orbitals (0-based)")->delimiter(',');
    cmd->add_option("--beta", o.beta, "Occupied beta spatial orbitals (0-based)")->delimiter(',');
    cmd->add_option("--combo", o.combo, "Spin-swapped two-determinant guess")
        ->check(CLI::IsMember({"singlet", "triplet"}));
}

void add_solver(CLI::App* cmd, Options& o) {
    cmd->add_option("--tol", o.tol, "Variance convergence tolerance (hartree^2)");
    cmd->add_option("--max-iter", o.max_iter, "Maximum iterations");
    cmd->add_option("--alpha-max", o.alpha_max, "Cap on the generator norm per step");
    cmd->add_option("--line-search-tol", o.line_search_tol, "Line-search step tolerance");
    cmd->add_option("--gradient", o.gradient, "Gradient evaluation")
        ->check(CLI::IsMember({"exact", "emulated"}));
    cmd->add_option("--delta", o.deltas, "Measurement delta (repeatable, decreasing)");
    cmd->add_option("--richardson", o.richardson, "Richardson levels (default: all deltas)");
}

cqe::OccupationSpec occupation(const Options& o) {
    cqe::OccupationSpec spec{o.alpha, o.beta, cqe::OccupationSpec::Combo::None};
    if (o.combo == "singlet") spec.combo = cqe::OccupationSpec::Combo::Singlet;
    if (o.combo == "triplet") spec.combo = cqe::OccupationSpec::Combo::Triplet;
    return spec;
}

cqe::RunSpec run_spec(const Options& o) {
    cqe::RunSpec spec;
    spec.fcidump_path = o.fcidumps.empty() ? std::string{} : o.fcidumps.front();
    spec.occupation = occupation(o);
    spec.solver.epsilon = o.tol;
    spec.solver.max_iterations = o.max_iter;
    spec.solver.alpha_max = o.alpha_max;
    spec.solver.line_search_tol = o.line_search_tol;
    spec.solver.gradient_mode =
        o.gradient == "emulated" ? cqe::GradientMode::Emulated : cqe::GradientMode::Exact;
    if (!o.deltas.empty()) spec.solver.measurement.deltas = o.deltas;
    spec.solver.measurement.richardson_order =
        o.richardson > 0 ? o.richardson : static_cast<int>(spec.solver.measurement.deltas.size());
    spec.format = o.format == "csv" ? cqe::OutputFormat::Csv : cqe::OutputFormat::Json;
    spec.out_path = o.out;
    return spec;
}

int finish(const cqe::RunOutcome& outcome, const Options& o) {
    if (!outcome.error.empty()) std::cerr << "error: " << outcome.error << "\n";
    if (outcome.code == cqe::ExitCode::Usage || outcome.code == cqe::ExitCode::Parse ||
        (outcome.code == cqe::ExitCode::Io && outcome.document.contains("error")))
        return static_cast<int>(outcome.code);
    const auto format = o.format == "csv" ? cqe::OutputFormat::Csv : cqe::OutputFormat::Json;
    if (!cqe::write_output(cqe::render(outcome.document, format), o.out)) {
        std::cerr << "error: cannot write " << o.out << "\n";
        return static_cast<int>(cqe::ExitCode::Io);
    }
    return static_cast<int>(outcome.code);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variance-based contracted quantum eigensolver"};
    app.require_subcommand(1);
    Options o;

    auto* fci = app.add_subcommand("fci", "Exact diagonalization of one (N_alpha, N_beta) sector");
    add_common(fci, o, false);
    fci->add_option("--sector", o.sector, "N_alpha,N_beta (default: from NELEC and MS2)")
        ->delimiter(',')
        ->expected(2);

    auto* solve = app.add_subcommand("solve", "Converge one state");
    add_common(solve, o, false);
    add_state(solve, o);
    add_solver(solve, o);

    auto* scan = app.add_subcommand("scan", "Converge states across several geometries");
    add_common(scan, o, true);
    add_state(scan, o);
    add_solver(scan, o);
    scan->add_option("--state", o.states, "State spec 'a0,a1/b0,b1[/singlet|triplet]' (repeatable)");

    auto* delta = app.add_subcommand("delta-study", "Emulated vs exact variance over the delta ladder");
    add_common(delta, o, false);
    add_state(delta, o);
    add_solver(delta, o);
    delta->add_flag("--converge", o.converge, "Converge the state before the study");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fci->parsed()) {
            int na = 0;
            int nb = 0;
            if (o.sector.size() == 2) {
                na = o.sector[0];
                nb = o.sector[1];
            } else {
                const auto ints = cqe::read_fcidump(o.fcidumps.front());
                na = (ints.n_electrons() + ints.ms2()) / 2;
                nb = ints.n_electrons() - na;
            }
            return finish(cqe::run_fci(o.fcidumps.front(), na, nb), o);
        }
        if (solve->parsed()) return finish(cqe::run_solve(run_spec(o)), o);
        if (scan->parsed()) {
            std::vector<cqe::OccupationSpec> states;
            for (const auto& s : o.states) states.push_back(cqe::parse_state(s));
            if (states.empty()) states.push_back(occupation(o));
            return finish(cqe::run_scan(run_spec(o), o.fcidumps, states), o);
        }
        if (delta->parsed()) return finish(cqe::run_delta_study(run_spec(o), o.converge), o);
    } catch (const cqe::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(cqe::ExitCode::Parse);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(cqe::ExitCode::Io);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(cqe::ExitCode::Usage);
    }
    return static_cast<int>(cqe::ExitCode::Usage);
}
