// Copyright 2026 The CQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqe/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "cqe/diagnostics.hpp"

namespace cqe {

using nlohmann::json;

nlohmann::json to_json(const SolverConfig& c) {
    json j{{"epsilon", c.epsilon},
           {"max_iterations", c.max_iterations},
           {"alpha_max", c.alpha_max},
           {"line_search_tol", c.line_search_tol},
           {"gradient_mode", c.gradient_mode == GradientMode::Exact ? "exact" : "emulated"}};
    j["measurement"] = {{"deltas", c.measurement.deltas},
                        {"richardson_order", c.measurement.richardson_order}};
    return j;
}

nlohmann::json to_json(const OccupationSpec& s) {
    const char* combo = s.combo == OccupationSpec::Combo::None
                            ? "none"
                            : (s.combo == OccupationSpec::Combo::Singlet ? "singlet" : "triplet");
    return {{"alpha", s.alpha}, {"beta", s.beta}, {"combo", combo}};
}

nlohmann::json to_json(const ConvergenceRecord& r) {
    return {{"iteration", r.iteration},         {"energy", r.energy},
            {"variance", r.variance},           {"cse_norm", r.cse_norm},
            {"gradient_norm", r.gradient_norm}, {"step_length", r.step_length},
            {"sz", r.sz},                       {"s_squared", r.s_squared}};
}

OccupationSpec parse_state(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, '/');) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3)
        throw std::invalid_argument("state spec must look like 'a0,a1/b0,b1[/singlet|triplet]'");
    auto ints = [](const std::string& s) {
        std::vector<int> out;
        std::stringstream in(s);
        for (std::string tok; std::getline(in, tok, ',');) {
            if (tok.find_first_not_of(" ") == std::string::npos) continue;
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (tok.find_first_not_of(" ", used) != std::string::npos)
                throw std::invalid_argument("bad orbital index '" + tok + "'");
            out.push_back(v);
        }
        return out;
    };
    OccupationSpec spec{ints(parts[0]), ints(parts[1]), OccupationSpec::Combo::None};
    if (parts.size() == 3) {
        if (parts[2] == "singlet") spec.combo = OccupationSpec::Combo::Singlet;
        else if (parts[2] == "triplet") spec.combo = OccupationSpec::Combo::Triplet;
        else throw std::invalid_argument("combo must be 'singlet' or 'triplet'");
    }
    return spec;
}

std::string format_state(const OccupationSpec& spec) {
    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    std::string out = join(spec.alpha) + "/" + join(spec.beta);
    if (spec.combo == OccupationSpec::Combo::Singlet) out += "/singlet";
    if (spec.combo == OccupationSpec::Combo::Triplet) out += "/triplet";
    return out;
}

namespace {

RunOutcome failure(ExitCode code, const std::string& message) {
    RunOutcome out;
    out.code = code;
    out.error = message;
    out.document = {{"error", message}};
    return out;
}

// Loads integrals, mapping failures onto exit codes.
std::optional<MolecularIntegrals> load(const std::string& path, RunOutcome& err) {
    try {
        return read_fcidump(path);
    } catch (const ParseError& e) {
        err = failure(ExitCode::Parse, e.what());
    } catch (const std::ios_base::failure& e) {
        err = failure(ExitCode::Io, e.what());
    } catch (const std::invalid_argument& e) {
        err = failure(ExitCode::Parse, e.what());
    }
    return std::nullopt;
}

json solve_document(const RunSpec& spec, const MolecularIntegrals& ints, ExitCode& code) {
    const int n_alpha = static_cast<int>(spec.occupation.alpha.size());
    const int n_beta = static_cast<int>(spec.occupation.beta.size());
    if (n_alpha + n_beta != ints.n_electrons())
        throw std::invalid_argument("occupation lists hold " + std::to_string(n_alpha + n_beta) +
                                    " electrons but NELEC is " + std::to_string(ints.n_electrons()));

    const auto basis = enumerate_sector(ints.n_spatial(), n_alpha, n_beta);
    const HamiltonianOperator h(ints, basis);
    const StateVector psi0 = initial_state(basis, spec.occupation);
    const SolveResult res = solve(h, psi0, spec.solver);
    const SpectrumResult spectrum = diagonalize(h);
    const StateIdentification target = identify_state(res.state, spectrum);

    const auto& last = res.final_record();
    json trace = json::array();
    for (const auto& r : res.trace) {
        json row = to_json(r);
        row["energy_error"] = std::abs(r.energy - target.eigenvalue);
        trace.push_back(std::move(row));
    }
    json initial = to_json(res.initial);
    initial["energy_error"] = std::abs(res.initial.energy - target.eigenvalue);

    json summary{{"status", to_string(res.status)},
                 {"converged", res.converged()},
                 {"message", res.message},
                 {"energy", last.energy},
                 {"fci_energy", target.eigenvalue},
                 {"energy_error", std::abs(last.energy - target.eigenvalue)},
                 {"variance", last.variance},
                 {"cse_norm", last.cse_norm},
                 {"gradient_norm", last.gradient_norm},
                 {"iterations", res.iterations()},
                 {"sz", last.sz},
                 {"s_squared", last.s_squared},
                 {"multiplicity", multiplicity(last.s_squared)},
                 {"eigenstate_index", target.index},
                 {"eigenstate_degeneracy", target.degeneracy},
                 {"eigenstate_overlap", target.overlap}};
    json config{{"fcidump", spec.fcidump_path},
                {"sector", {{"n_spatial", ints.n_spatial()}, {"n_alpha", n_alpha}, {"n_beta", n_beta}}},
                {"initial", to_json(spec.occupation)},
                {"solver", to_json(spec.solver)}};
    code = res.converged() ? ExitCode::Success : ExitCode::NonConvergence;
    return {{"config", config}, {"summary", summary}, {"initial", initial}, {"trace", trace}};
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

RunOutcome run_solve(const RunSpec& spec, const MolecularIntegrals& integrals) {
    RunOutcome out;
    try {
        out.document = solve_document(spec, integrals, out.code);
    } catch (const std::invalid_argument& e) {
        return failure(ExitCode::Usage, e.what());
    }
    return out;
}

RunOutcome run_solve(const RunSpec& spec) {
    RunOutcome err;
    const auto ints = load(spec.fcidump_path, err);
    if (!ints) return err;
    return run_solve(spec, *ints);
}

RunOutcome run_fci(const std::string& path, int n_alpha, int n_beta) {
    RunOutcome out;
    const auto ints = load(path, out);
    if (!ints) return out;
    if (n_alpha + n_beta != ints->n_electrons())
        return failure(ExitCode::Usage, "sector electron count does not match NELEC");
    try {
        const auto basis = enumerate_sector(ints->n_spatial(), n_alpha, n_beta);
        const HamiltonianOperator h(*ints, basis);
        const auto spectrum = diagonalize(h);
        json states = json::array();
        for (std::size_t k = 0; k < spectrum.eigenvectors.size(); ++k) {
            const auto spin = spin_expectations(spectrum.eigenvectors[k]);
            states.push_back({{"index", k},
                              {"energy", spectrum.eigenvalues(static_cast<Eigen::Index>(k))},
                              {"sz", spin.sz},
                              {"s_squared", spin.s_squared},
                              {"multiplicity", multiplicity(spin.s_squared)}});
        }
        out.document = {
            {"config",
             {{"fcidump", path},
              {"sector", {{"n_spatial", ints->n_spatial()}, {"n_alpha", n_alpha}, {"n_beta", n_beta}}}}},
            {"summary",
             {{"dimension", basis->size()},
              {"ground_energy", spectrum.eigenvalues(0)},
              {"core_energy", ints->core_energy()}}},
            {"states", states}};
    } catch (const std::invalid_argument& e) {
        return failure(ExitCode::Usage, e.what());
    }
    return out;
}

RunOutcome run_scan(const RunSpec& tmpl, const std::vector<std::string>& paths,
                    const std::vector<OccupationSpec>& states) {
    if (states.empty()) return failure(ExitCode::Usage, "scan needs at least one state");

    // Geometries are independent; each task returns its rows in state order.
    auto run_geometry = [&](const std::string& path) {
        json rows = json::array();
        RunOutcome err;
        const auto ints = load(path, err);
        for (std::size_t k = 0; k < states.size(); ++k) {
            json row{{"geometry", std::filesystem::path(path).stem().string()},
                     {"fcidump", path},
                     {"state", k},
                     {"initial", format_state(states[k])}};
            if (!ints) {
                row["converged"] = false;
                row["error"] = err.error;
                rows.push_back(std::move(row));
                continue;
            }
            RunSpec spec = tmpl;
            spec.fcidump_path = path;
            spec.occupation = states[k];
            const RunOutcome one = run_solve(spec, *ints);
            if (one.code == ExitCode::Usage) {
                row["converged"] = false;
                row["error"] = one.error;
            } else {
                const json& s = one.document["summary"];
                row["converged"] = s["converged"];
                row["error"] = s["message"];
                for (const char* key : {"energy", "fci_energy", "energy_error", "variance", "cse_norm",
                                        "iterations", "multiplicity", "eigenstate_index"})
                    row[key] = s[key];
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };

    std::vector<std::future<json>> tasks;
    tasks.reserve(paths.size());
    for (const auto& p : paths) tasks.push_back(std::async(std::launch::async, run_geometry, p));

    json rows = json::array();
    for (auto& t : tasks)
        for (auto& row : t.get()) rows.push_back(std::move(row));

    json per_state = json::array();
    bool all_ok = true;
    for (std::size_t k = 0; k < states.size(); ++k) {
        double max_err = 0.0;
        int ok = 0;
        int failed = 0;
        for (const auto& row : rows) {
            if (row["state"] != k) continue;
            if (row["converged"].get<bool>()) {
                ++ok;
                max_err = std::max(max_err, row["energy_error"].get<double>());
            } else {
                ++failed;
            }
        }
        all_ok = all_ok && failed == 0;
        per_state.push_back({{"state", k},
                             {"initial", format_state(states[k])},
                             {"max_energy_error", max_err},
                             {"converged", ok},
                             {"failed", failed}});
    }

    RunOutcome out;
    out.code = all_ok ? ExitCode::Success : ExitCode::NonConvergence;
    json state_specs = json::array();
    for (const auto& s : states) state_specs.push_back(to_json(s));
    out.document = {{"config", {{"fcidumps", paths}, {"states", state_specs}, {"solver", to_json(tmpl.solver)}}},
                    {"summary", {{"per_state", per_state}, {"all_converged", all_ok}}},
                    {"rows", rows}};
    return out;
}

RunOutcome run_delta_study(const RunSpec& spec, bool converge_first) {
    RunOutcome out;
    const auto ints = load(spec.fcidump_path, out);
    if (!ints) return out;
    try {
        spec.solver.measurement.validate();
        const int n_alpha = static_cast<int>(spec.occupation.alpha.size());
        const int n_beta = static_cast<int>(spec.occupation.beta.size());
        if (n_alpha + n_beta != ints->n_electrons())
            return failure(ExitCode::Usage, "occupation lists do not match NELEC");
        const auto basis = enumerate_sector(ints->n_spatial(), n_alpha, n_beta);
        const HamiltonianOperator h(*ints, basis);
        StateVector psi = initial_state(basis, spec.occupation);
        if (converge_first) {
            SolverConfig exact = spec.solver;
            exact.gradient_mode = GradientMode::Exact;
            const auto res = solve(h, psi, exact);
            if (!res.converged()) out.code = ExitCode::NonConvergence;
            psi = res.state;
        }

        const Eigen::VectorXd& c = psi.coefficients();
        const double e = expectation(psi, h);
        const Eigen::VectorXd r = h.apply(c) - e * c;
        const double exact_var = r.squaredNorm();
        const Eigen::MatrixXd exact_kernel =
            transition_2rdm(*basis, c, h.apply(r) - e * r).matrix();

        json table = json::array();
        std::vector<double> ds;
        std::vector<double> errs;
        std::vector<double> kerrs;
        std::vector<double> vars;
        for (double delta : spec.solver.measurement.deltas) {
            const double v = emulated_variance(psi, h, delta);
            const double kerr =
                (emulated_gradient_kernel(psi, h, delta).matrix() - exact_kernel).norm();
            table.push_back({{"delta", delta},
                             {"emulated_variance", v},
                             {"exact_variance", exact_var},
                             {"error", std::abs(v - exact_var)},
                             {"kernel_error", kerr}});
            ds.push_back(delta);
            vars.push_back(v);
            errs.push_back(std::abs(v - exact_var));
            kerrs.push_back(kerr);
        }

        json summary{{"exact_variance", exact_var}, {"energy", e}};
        if (ds.size() >= 2) {
            const double extrapolated = richardson<double>(ds, vars);
            summary["richardson_variance"] = extrapolated;
            summary["richardson_error"] = std::abs(extrapolated - exact_var);
            const bool positive = std::all_of(errs.begin(), errs.end(), [](double x) { return x > 0; });
            summary["slope"] = positive ? json(log_log_slope(ds, errs)) : json(nullptr);
            const bool kpositive =
                std::all_of(kerrs.begin(), kerrs.end(), [](double x) { return x > 0; });
            summary["kernel_slope"] = kpositive ? json(log_log_slope(ds, kerrs)) : json(nullptr);
        }
        out.document = {{"config",
                         {{"fcidump", spec.fcidump_path},
                          {"initial", to_json(spec.occupation)},
                          {"converge_first", converge_first},
                          {"solver", to_json(spec.solver)}}},
                        {"summary", summary},
                        {"table", table}};
    } catch (const std::invalid_argument& e) {
        return failure(ExitCode::Usage, e.what());
    }
    return out;
}

std::string render(const nlohmann::json& document, OutputFormat format) {
    if (format == OutputFormat::Json) return document.dump(2) + "\n";

    const json* rows = nullptr;
    for (const char* key : {"trace", "rows", "states", "table"}) {
        if (document.contains(key)) {
            rows = &document[key];
            break;
        }
    }
    std::ostringstream out;
    if (rows == nullptr || rows->empty()) return "";
    std::vector<std::string> columns;
    for (const auto& [k, _] : rows->front().items()) columns.push_back(k);
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : *rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out << ",";
            const auto it = row.find(columns[i]);
            if (it == row.end() || it->is_null()) continue;
            if (it->is_string()) {
                std::string s = it->get<std::string>();
                if (s.find_first_of(",\"\n") != std::string::npos) {
                    std::string quoted = "\"";
                    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                    s = quoted + "\"";
                }
                out << s;
            } else {
                out << it->dump();
            }
        }
        out << "\n";
    }
    return out.str();
}

bool write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return static_cast<bool>(std::cout);
    }
    std::ofstream f(path);
    if (!f) return false;
    f << text;
    return static_cast<bool>(f);
}

}  // namespace cqe
