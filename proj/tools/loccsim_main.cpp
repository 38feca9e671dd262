// Copyright 2026 The loccsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: runs a protocol from a JSON config (enumerating or
// sampling measurement branches, optionally with step-level verification)
// and emits a JSON report, or runs the acceptance suite via --selftest.
//
// Exit codes: 0 all checks passed, 1 verification failure, 2 config error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loccsim/json_io.hpp"
#include "loccsim/protocol.hpp"
#include "loccsim/selftest.hpp"
#include "loccsim/statevector.hpp"
#include "loccsim/verify.hpp"

namespace {

using namespace loccsim;

std::string bits_text(const std::vector<int>& bits) {
    std::string out = "[";
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(bits[i]);
    }
    return out + "]";
}

std::string ledger_text(const ResourceLedger& ledger) {
    std::ostringstream out;
    out << ledger.total_ebits() << (ledger.total_ebits() == 1 ? " ebit, " : " ebits, ")
        << ledger.total_cbits() << (ledger.total_cbits() == 1 ? " cbit" : " cbits");
    return out.str();
}

int cmd_selftest(std::uint64_t seed, const std::string& grid_text, bool corrupt_step5) {
    SelftestOptions options;
    options.seed = seed;
    options.grid = GridSpec::parse(grid_text);
    options.corrupt_step5_order = corrupt_step5;
    const SelftestReport report = run_selftest(options, std::cout);
    if (report.all_passed) {
        std::cout << "selftest PASS: " << report.criteria.size()
                  << " criteria, max amplitude error " << std::scientific << std::setprecision(2)
                  << report.max_error << "\n";
        return 0;
    }
    const CriterionResult* failure = report.first_failure();
    std::cout << "selftest FAIL: criterion " << failure->number << " (" << failure->name << ")\n";
    return 1;
}

int cmd_run(const RunConfig& cfg) {
    Rng rng(cfg.seed);
    const BlockOperation& op = cfg.operation;
    const StateVector psi0 =
        cfg.initial_state.has_value()
            ? *cfg.initial_state
            : StateVector::haar_random(default_labels(op.total_qubits()), rng);
    const StateVector expected = oracle_apply(op, psi0);

    std::size_t num_bits = 0;
    BranchRunner runner;
    ResourceLedger expected_ledger;
    if (cfg.protocol == "bipartite-diagonal") {
        num_bits = 2;
        expected_ledger = expected_bipartite_ledger();
        runner = [&](const std::vector<int>& bits) {
            return run_bipartite_diagonal(op, psi0, {bits[0], bits[1]});
        };
    } else if (cfg.protocol == "bipartite-offdiagonal") {
        num_bits = 2;
        expected_ledger = expected_bipartite_ledger();
        runner = [&](const std::vector<int>& bits) {
            return run_bipartite_offdiagonal(op, psi0, {bits[0], bits[1]});
        };
    } else if (cfg.protocol == "bipartite-multiqubit") {
        num_bits = 2 * op.control_width();
        expected_ledger = expected_multiqubit_ledger(op.control_width());
        runner = [&](const std::vector<int>& bits) {
            MultiqubitBranch branch;
            branch.a.assign(bits.begin(), bits.begin() + static_cast<long>(op.control_width()));
            branch.b.assign(bits.begin() + static_cast<long>(op.control_width()), bits.end());
            return run_bipartite_multiqubit(op, psi0, branch);
        };
    } else {
        num_bits = 4;
        expected_ledger = expected_three_party_ledger();
        runner = [&](const std::vector<int>& bits) {
            return run_three_party_diagonal(op, psi0, {bits[0], bits[1], bits[2], bits[3]});
        };
    }

    std::vector<ProtocolTrace> traces;
    if (cfg.mode == "sample") {
        std::uniform_int_distribution<int> coin(0, 1);
        std::vector<int> bits(num_bits);
        for (auto& bit : bits) bit = coin(rng);
        traces.push_back(runner(bits));
    } else {
        traces = enumerate_branches(runner, num_bits);
    }

    // Step-level verification reuses the control-side schedule; the
    // three-party protocol has its own step ids and is covered by the
    // first-mover consistency check instead.
    const bool with_steps = cfg.mode == "verify" && cfg.protocol != "three-party";

    Json branches = Json::array();
    bool all_passed = true;
    double max_err = 0.0;
    std::string failure;
    const auto note_failure = [&](const std::vector<int>& bits, const std::string& what) {
        all_passed = false;
        if (failure.empty()) failure = "branch " + bits_text(bits) + ": " + what;
    };

    for (const auto& trace : traces) {
        const auto bits = trace.branch_bits();
        const double err = max_amplitude_diff(trace.final_state, expected);
        max_err = std::max(max_err, err);
        const bool state_ok = err <= kUnitaryTol;
        const bool resources_ok = check_resources(trace, expected_ledger);
        bool branch_ok = state_ok && resources_ok;
        if (!state_ok) {
            note_failure(bits, "amplitude error " + std::to_string(err) +
                                   " against direct application");
        }
        if (!resources_ok) {
            note_failure(bits, "resource ledger mismatch, got " + ledger_text(trace.ledger) +
                                   ", expected " + ledger_text(expected_ledger));
        }

        Json b = trace_to_json(trace, false);
        b["fidelity"] = fidelity(trace.final_state, expected);
        b["max_amplitude_error"] = err;
        b["state_ok"] = state_ok;
        b["resources_ok"] = resources_ok;

        if (with_steps) {
            Json checks = Json::array();
            for (const auto& step : check_step_states(trace, op, psi0)) {
                checks.push_back(Json{{"step", step.step_id},
                                      {"max_amplitude_error", step.max_amplitude_error},
                                      {"passed", step.passed}});
                if (!step.passed) {
                    branch_ok = false;
                    note_failure(bits, "state after " + step.step_id + " off by " +
                                           std::to_string(step.max_amplitude_error));
                }
            }
            b["step_checks"] = std::move(checks);
        }
        if (cfg.mode == "verify" && cfg.protocol == "bipartite-offdiagonal") {
            const auto early = run_bipartite_offdiagonal(op, psi0, {bits[0], bits[1]},
                                                         XCorrectionTiming::AfterStep1);
            const double timing_err = max_amplitude_diff(early.final_state, trace.final_state);
            b["x_timing_error"] = timing_err;
            if (timing_err > kUnitaryTol) {
                branch_ok = false;
                note_failure(bits, "early and late X placements disagree by " +
                                       std::to_string(timing_err));
            }
        }
        if (cfg.mode == "verify" && cfg.protocol == "three-party") {
            const auto swapped = run_three_party_diagonal(
                op, psi0, {bits[0], bits[1], bits[2], bits[3]}, FirstMover::BobFirst);
            const double mover_err = max_amplitude_diff(swapped.final_state, trace.final_state);
            b["first_mover_error"] = mover_err;
            if (mover_err > kUnitaryTol) {
                branch_ok = false;
                note_failure(bits, "first-mover orders disagree by " + std::to_string(mover_err));
            }
        }

        b["passed"] = branch_ok;
        branches.push_back(std::move(b));
    }

    Json report{{"schema", 1},
                {"protocol", cfg.protocol},
                {"mode", cfg.mode},
                {"seed", cfg.seed},
                {"operation", to_json(op)},
                {"initial_state", to_json(psi0)},
                {"expected_state", to_json(expected)},
                {"branches", std::move(branches)},
                {"summary", Json{{"branches", traces.size()},
                                 {"max_amplitude_error", max_err},
                                 {"all_passed", all_passed}}}};

    const std::string text = report.dump(2) + "\n";
    if (cfg.output.has_value()) {
        std::ofstream out(*cfg.output);
        if (!out) {
            throw ConfigError("cannot write report to \"" + *cfg.output + "\"");
        }
        out << text;
    } else {
        std::cout << text;
    }

    std::cerr << cfg.protocol << " " << cfg.mode << ": " << traces.size()
              << (traces.size() == 1 ? " branch, " : " branches, ") << ledger_text(expected_ledger)
              << " per branch, max amplitude error " << std::scientific << std::setprecision(2)
              << max_err << (all_passed ? ", PASS" : ", FAIL") << "\n";
    if (!all_passed) {
        std::cerr << "verification failed: " << failure << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulates and verifies the distributed implementation of nonlocal block "
                 "operations via local gates, shared Bell pairs, and classical messages."};

    std::string config_path;
    std::string mode_override;
    std::string out_override;
    std::string grid_text;
    std::uint64_t seed = 1;
    bool selftest = false;
    bool corrupt_step5 = false;

    app.add_option("--config", config_path, "run configuration (JSON file)");
    app.add_option("--mode", mode_override, "override the config's mode")
        ->check(CLI::IsMember({"enumerate", "sample", "verify"}));
    app.add_option("--seed", seed, "seed for random states and sampled branches");
    app.add_option("--out", out_override, "write the JSON report here instead of stdout");
    app.add_flag("--selftest", selftest, "run the acceptance criteria and exit");
    app.add_option("--grid", grid_text, "selftest grid, e.g. nmax=3,mmax=2,cases=25");
    app.add_flag("--debug-swap-step5", corrupt_step5,
                 "selftest only: swap the multiqubit final corrections (the suite must fail)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest) {
            return cmd_selftest(seed, grid_text, corrupt_step5);
        }
        if (config_path.empty()) {
            std::cerr << "config error: --config is required unless --selftest is given\n";
            return 2;
        }
        RunConfig cfg = load_config(config_path);
        if (app.count("--mode") > 0) cfg.mode = mode_override;
        if (app.count("--seed") > 0) cfg.seed = seed;
        if (app.count("--out") > 0) cfg.output = out_override;
        return cmd_run(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
