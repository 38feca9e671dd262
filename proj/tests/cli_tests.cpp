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

// End-to-end checks for the command line tool: exit codes, report contents,
// determinism of the serialized report, and the selftest entry point.
// Invoked as: cli_tests <path-to-loccsim-binary>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "loccsim/blockops.hpp"
#include "loccsim/json_io.hpp"
#include "loccsim/linalg.hpp"
#include "loccsim/statevector.hpp"

namespace fs = std::filesystem;
using loccsim::Json;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "ok: " << what << "\n";
    } else {
        std::cout << "FAIL: " << what << "\n";
        ++g_failures;
    }
}

int run(const std::string& command) {
    const int status = std::system(command.c_str());
    if (status != -1 && WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_json(const fs::path& path, const Json& j) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-loccsim>\n";
        return 2;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";
    const fs::path dir = fs::temp_directory_path() / "loccsim_cli_tests";
    fs::create_directories(dir);
    const auto in_dir = [&](const std::string& name) { return (dir / name).string(); };

    const auto eye = loccsim::UnitaryMatrix::identity(2);

    {
        // A CNOT assembled from blocks, applied to |10>, every branch enumerated.
        const Json cfg{
            {"protocol", "bipartite-diagonal"},
            {"operation",
             loccsim::to_json(loccsim::BlockOperation::diagonal({eye, loccsim::named_gate("X")}))},
            {"initial_state",
             loccsim::to_json(loccsim::StateVector::basis_state({"control", "target"}, 0b10))},
            {"mode", "enumerate"}};
        write_json(dir / "cnot.json", cfg);

        const int code = run(cli + " --config " + in_dir("cnot.json") + " --out " +
                             in_dir("cnot_report.json") + " 2> " + in_dir("cnot_err.txt"));
        check(code == 0, "cnot enumerate exits 0");

        const Json report = Json::parse(slurp(dir / "cnot_report.json"));
        check(report.at("schema") == 1, "report carries schema 1");
        check(report.at("branches").size() == 4, "cnot run enumerates 4 branches");
        check(report.at("summary").at("all_passed") == true, "cnot summary passes");
        bool branches_pass = true;
        for (const auto& branch : report.at("branches")) {
            branches_pass = branches_pass && branch.at("passed") == true &&
                            branch.at("fidelity").get<double>() > 0.999999;
        }
        check(branches_pass, "every cnot branch passes with fidelity 1");
        check(report.at("expected_state").at("labels") == Json::array({"control", "target"}),
              "expected state keeps the input labels");

        const std::string err = slurp(dir / "cnot_err.txt");
        check(contains(err, "4 branches, 1 ebit, 2 cbits per branch"),
              "summary line reports the resource budget");
        check(contains(err, ", PASS"), "summary line reports PASS");
    }

    {
        // The same config with a non-unitary block must be rejected.
        Json cfg = Json::parse(slurp(dir / "cnot.json"));
        cfg["operation"]["blocks"][1] = Json::parse("[[[1,0],[0,0]],[[1,0],[1,0]]]");
        write_json(dir / "bad_block.json", cfg);

        const int code = run(cli + " --config " + in_dir("bad_block.json") + " > /dev/null 2> " +
                             in_dir("bad_block_err.txt"));
        check(code == 2, "non-unitary block exits 2");
        check(contains(slurp(dir / "bad_block_err.txt"),
                       "config error: operation.blocks[1] fails unitarity"),
              "non-unitary block error names the field");
    }

    {
        // Three-party verify on a random state, with resource totals on stderr.
        loccsim::Rng rng(77);
        std::vector<loccsim::UnitaryMatrix> blocks;
        for (int i = 0; i < 4; ++i) blocks.push_back(loccsim::haar_random_unitary(2, rng));
        const Json cfg{{"protocol", "three-party"},
                       {"operation", loccsim::to_json(loccsim::BlockOperation::diagonal(blocks))},
                       {"initial_state", "random"},
                       {"seed", 3},
                       {"mode", "verify"}};
        write_json(dir / "three_party.json", cfg);

        const int code = run(cli + " --config " + in_dir("three_party.json") + " --out " +
                             in_dir("three_party_report.json") + " 2> " + in_dir("tp_err.txt"));
        check(code == 0, "three-party verify exits 0");

        const Json report = Json::parse(slurp(dir / "three_party_report.json"));
        check(report.at("branches").size() == 16, "three-party run enumerates 16 branches");
        check(report.at("branches")[0].at("first_mover_error").get<double>() < 1e-10,
              "three-party branches record the first-mover comparison");
        check(contains(slurp(dir / "tp_err.txt"), "2 ebits, 4 cbits per branch"),
              "three-party summary reports 2 ebits and 4 cbits");

        // Identical invocations must produce byte-identical reports.
        run(cli + " --config " + in_dir("three_party.json") + " --out " +
            in_dir("three_party_report2.json") + " 2> /dev/null");
        check(slurp(dir / "three_party_report.json") == slurp(dir / "three_party_report2.json"),
              "reports are byte-identical across runs");

        const int sample_code = run(cli + " --config " + in_dir("three_party.json") +
                                    " --mode sample --out " + in_dir("three_party_sample.json") +
                                    " 2> /dev/null");
        const Json sample = Json::parse(slurp(dir / "three_party_sample.json"));
        check(sample_code == 0 && sample.at("branches").size() == 1,
              "sample mode runs a single branch");
    }

    {
        // Offdiagonal verify records per-step checks and the X timing probe.
        const Json cfg{
            {"protocol", "bipartite-offdiagonal"},
            {"operation",
             loccsim::to_json(
                 loccsim::BlockOperation::offdiagonal({eye, loccsim::named_gate("Z")}))},
            {"initial_state", "random"},
            {"seed", 11},
            {"mode", "verify"}};
        write_json(dir / "offdiag.json", cfg);

        const int code = run(cli + " --config " + in_dir("offdiag.json") + " --out " +
                             in_dir("offdiag_report.json") + " 2> /dev/null");
        check(code == 0, "offdiagonal verify exits 0");

        const Json report = Json::parse(slurp(dir / "offdiag_report.json"));
        const Json& first = report.at("branches")[0];
        check(first.at("step_checks").size() == 5, "verify mode records five step checks");
        bool steps_pass = true;
        for (const auto& step : first.at("step_checks")) {
            steps_pass = steps_pass && step.at("passed") == true;
        }
        check(steps_pass, "all step checks pass");
        check(first.at("x_timing_error").get<double>() < 1e-10,
              "early and late X placements agree");
    }

    {
        const int code = run(cli + " --selftest --seed 5 --grid nmax=1,mmax=1,cases=2 > " +
                             in_dir("selftest_out.txt") + " 2>&1");
        check(code == 0, "reduced selftest exits 0");
        const std::string out = slurp(dir / "selftest_out.txt");
        check(contains(out, "criterion 10 PASS"), "selftest prints a line per criterion");
        check(contains(out, "selftest PASS"), "selftest prints the final verdict");
    }

    {
        const int code = run(cli + " --selftest --grid nmax=2,mmax=1,cases=3 --debug-swap-step5 > " +
                             in_dir("corrupt_out.txt") + " 2>&1");
        check(code == 1, "corrupted selftest exits 1");
        check(contains(slurp(dir / "corrupt_out.txt"), "selftest FAIL: criterion 5"),
              "corrupted selftest fails at the multiqubit criterion");
    }

    {
        const int code = run(cli + " 2> " + in_dir("noconfig_err.txt"));
        check(code == 2, "missing --config exits 2");
        check(contains(slurp(dir / "noconfig_err.txt"), "--config is required"),
              "missing --config is explained");

        const int grid_code =
            run(cli + " --selftest --grid depth=4 2> " + in_dir("badgrid_err.txt"));
        check(grid_code == 2, "unknown grid key exits 2");
        check(contains(slurp(dir / "badgrid_err.txt"), "config error:"),
              "unknown grid key is reported as a config error");
    }

    if (g_failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cout << "cli_tests: " << g_failures << " check(s) failed\n";
    return 1;
}
