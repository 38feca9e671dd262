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

#include "loccsim/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include "loccsim/blockops.hpp"
#include "loccsim/linalg.hpp"
#include "loccsim/protocol.hpp"
#include "loccsim/statevector.hpp"
#include "loccsim/verify.hpp"

namespace loccsim {

namespace {

constexpr std::size_t kMaxIssues = 8;

Rng make_rng(std::uint64_t seed, std::uint64_t salt) {
    return Rng(seed ^ (salt * 0x9E3779B97F4A7C15ULL));
}

std::vector<QubitLabel> register_labels(std::size_t count) {
    std::vector<QubitLabel> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        labels.push_back("q" + std::to_string(i + 1));
    }
    return labels;
}

std::string sci(double x) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(2) << x;
    return out.str();
}

std::string bits_text(const std::vector<int>& bits) {
    std::string out = "[";
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(bits[i]);
    }
    return out + "]";
}

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Accumulates the event-log audits over every trace the randomized
/// criteria produce; criteria 9 and 10 report on the whole population.
struct Audit {
    std::size_t traces = 0;
    std::size_t gates = 0;
    std::size_t corrections = 0;
    std::size_t measures = 0;
    double max_weight_dev = 0.0;
    std::vector<std::string> locality_issues;
    std::vector<std::string> weight_issues;

    void absorb(const ProtocolTrace& trace) {
        ++traces;
        for (const auto& event : trace.events) {
            if (const auto* g = std::get_if<GateEvent>(&event)) {
                ++gates;
                if (g->conditioned_on.has_value()) ++corrections;
            } else if (const auto* m = std::get_if<MeasureEvent>(&event)) {
                ++measures;
                max_weight_dev = std::max(max_weight_dev, std::abs(m->probability - 0.5));
            }
        }
        take(locality_issues, audit_locality(trace));
        take(weight_issues, audit_branch_weights(trace));
    }

  private:
    static void take(std::vector<std::string>& into, std::vector<std::string> found) {
        for (auto& issue : found) {
            if (into.size() >= kMaxIssues) return;
            into.push_back(std::move(issue));
        }
    }
};

void fail(CriterionResult& r, std::string detail) {
    if (r.detail.empty()) r.detail = std::move(detail);
}

void enforce_budget(CriterionResult& r, double budget_seconds) {
    if (r.detail.empty() && r.seconds >= budget_seconds) {
        std::ostringstream msg;
        msg << "runtime " << std::fixed << std::setprecision(1) << r.seconds << " s exceeds the "
            << budget_seconds << " s budget";
        fail(r, msg.str());
    }
}

/// Oracle equality, resource ledger, and audit absorption for one
/// enumerated family; shared by criteria 1 through 4.
bool check_enumerated(CriterionResult& r, Audit& audit, const std::vector<ProtocolTrace>& traces,
                      const StateVector& expected, const ResourceLedger& ledger,
                      const std::string& context) {
    for (const auto& trace : traces) {
        audit.absorb(trace);
        const double err = max_amplitude_diff(trace.final_state, expected);
        r.max_error = std::max(r.max_error, err);
        ++r.checks;
        if (err > kUnitaryTol) {
            fail(r, context + " branch " + bits_text(trace.branch_bits()) + ": amplitude error " +
                        sci(err));
            return false;
        }
        ++r.checks;
        if (!check_resources(trace, ledger)) {
            fail(r, context + " branch " + bits_text(trace.branch_bits()) +
                        ": resource ledger mismatch");
            return false;
        }
    }
    return true;
}

CriterionResult run_c1(const SelftestOptions& opt, Audit& audit) {
    CriterionResult r{1, "bipartite diagonal protocol matches direct application"};
    Stopwatch clock;
    Rng rng = make_rng(opt.seed, 1);
    const std::size_t cases = 4 * opt.grid.cases;
    const auto labels = register_labels(2);
    for (std::size_t c = 0; c < cases && r.detail.empty(); ++c) {
        const auto op = BlockOperation::diagonal(
            {haar_random_unitary(2, rng), haar_random_unitary(2, rng)});
        const auto psi0 = StateVector::haar_random(labels, rng);
        check_enumerated(r, audit, enumerate_bipartite_diagonal(op, psi0), oracle_apply(op, psi0),
                         expected_bipartite_ledger(), "case " + std::to_string(c));
    }
    r.cases = cases;
    r.seconds = clock.seconds();
    enforce_budget(r, 5.0);
    r.passed = r.detail.empty();
    return r;
}

CriterionResult run_c2(const SelftestOptions&, Audit& audit) {
    CriterionResult r{2, "diagonal protocol with blocks {I, X} implements CNOT"};
    Stopwatch clock;
    const auto op =
        BlockOperation::diagonal({UnitaryMatrix::identity(2), named_gate("X")});
    const auto labels = register_labels(2);
    for (std::size_t idx = 0; idx < 4 && r.detail.empty(); ++idx) {
        const auto psi0 = StateVector::basis_state(labels, idx);
        // Truth table: the target bit flips iff the control bit is set.
        const std::size_t flipped = idx ^ ((idx >> 1) & 1U);
        const auto expected = StateVector::basis_state(labels, flipped);
        check_enumerated(r, audit, enumerate_bipartite_diagonal(op, psi0), expected,
                         expected_bipartite_ledger(), "input " + std::to_string(idx));
    }
    r.cases = 4;
    r.seconds = clock.seconds();
    r.passed = r.detail.empty();
    return r;
}

CriterionResult run_c3(const SelftestOptions& opt, Audit& audit) {
    CriterionResult r{3, "bipartite offdiagonal protocol matches direct application and the X "
                         "correction commutes across steps"};
    Stopwatch clock;
    Rng rng = make_rng(opt.seed, 3);
    const std::size_t cases = 4 * opt.grid.cases;
    const auto labels = register_labels(2);
    for (std::size_t c = 0; c < cases && r.detail.empty(); ++c) {
        const auto op = BlockOperation::offdiagonal(
            {haar_random_unitary(2, rng), haar_random_unitary(2, rng)});
        const auto psi0 = StateVector::haar_random(labels, rng);
        const auto late = enumerate_bipartite_offdiagonal(op, psi0, XCorrectionTiming::AtStep5);
        if (!check_enumerated(r, audit, late, oracle_apply(op, psi0), expected_bipartite_ledger(),
                              "case " + std::to_string(c))) {
            break;
        }
        const auto early =
            enumerate_bipartite_offdiagonal(op, psi0, XCorrectionTiming::AfterStep1);
        for (std::size_t i = 0; i < late.size(); ++i) {
            audit.absorb(early[i]);
            const double err = max_amplitude_diff(early[i].final_state, late[i].final_state);
            r.max_error = std::max(r.max_error, err);
            ++r.checks;
            if (err > kUnitaryTol) {
                fail(r, "case " + std::to_string(c) + " branch " +
                            bits_text(late[i].branch_bits()) +
                            ": early and late X placements disagree by " + sci(err));
                break;
            }
        }
    }
    r.cases = cases;
    r.seconds = clock.seconds();
    r.passed = r.detail.empty();
    return r;
}

CriterionResult run_c4(const SelftestOptions& opt, Audit& audit) {
    CriterionResult r{4, "scalar blocks reduce the protocol to a phase-diagonal operation"};
    Stopwatch clock;
    Rng rng = make_rng(opt.seed, 4);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const std::size_t cases = 2 * opt.grid.cases;
    const auto labels = register_labels(2);
    for (std::size_t c = 0; c < cases && r.detail.empty(); ++c) {
        const double theta0 = angle(rng);
        const double theta1 = angle(rng);
        const auto op = BlockOperation::diagonal(
            {UnitaryMatrix(std::polar(1.0, theta0) * Matrix::Identity(2, 2)),
             UnitaryMatrix(std::polar(1.0, theta1) * Matrix::Identity(2, 2))});
        const auto psi0 = StateVector::haar_random(labels, rng);
        // The phase-diagonal reference, written out directly.
        Vector v(4);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t z = 0; z < 2; ++z) {
                v[static_cast<Eigen::Index>(i * 2 + z)] =
                    std::polar(1.0, i == 0 ? theta0 : theta1) *
                    psi0.amps()[static_cast<Eigen::Index>(i * 2 + z)];
            }
        }
        check_enumerated(r, audit, enumerate_bipartite_diagonal(op, psi0),
                         StateVector(labels, std::move(v)), expected_bipartite_ledger(),
                         "case " + std::to_string(c));
    }
    r.cases = cases;
    r.seconds = clock.seconds();
    r.passed = r.detail.empty();
    return r;
}

CriterionResult run_c5(const SelftestOptions& opt, Audit& audit) {
    CriterionResult r{5, "multiqubit protocol matches direct application with per-step state "
                         "checks"};
    Stopwatch clock;
    Rng rng = make_rng(opt.seed, 5);
    const Step5Order order = opt.corrupt_step5_order ? Step5Order::ZThenPermutation
                                                     : Step5Order::PermutationThenZ;
    for (std::size_t n = 1; n <= opt.grid.nmax && r.detail.empty(); ++n) {
        for (std::size_t m = 1; m <= opt.grid.mmax && r.detail.empty(); ++m) {
            if (n + m > 5) continue;
            const auto labels = register_labels(n + m);
            for (std::size_t c = 0; c < opt.grid.cases && r.detail.empty(); ++c) {
                ++r.cases;
                std::ostringstream where;
                where << "n=" << n << " m=" << m << " case " << c;
                const auto perm = Permutation::random(n, rng);
                std::vector<UnitaryMatrix> blocks;
                for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
                    blocks.push_back(haar_random_unitary(Eigen::Index{1} << m, rng));
                }
                const auto op = BlockOperation::permutation(perm, std::move(blocks));
                const auto psi0 = StateVector::haar_random(labels, rng);
                const auto expected = oracle_apply(op, psi0);
                const auto ledger = expected_multiqubit_ledger(n);
                for (const auto& trace : enumerate_bipartite_multiqubit(op, psi0, order)) {
                    audit.absorb(trace);
                    const std::string context =
                        where.str() + " branch " + bits_text(trace.branch_bits());
                    const double err = max_amplitude_diff(trace.final_state, expected);
                    r.max_error = std::max(r.max_error, err);
                    ++r.checks;
                    if (err > kUnitaryTol) {
                        fail(r, context + ": amplitude error " + sci(err));
                        break;
                    }
                    for (const auto& step : check_step_states(trace, op, psi0)) {
                        r.max_error = std::max(r.max_error, step.max_amplitude_error);
                        ++r.checks;
                        if (!step.passed) {
                            fail(r, context + ": state after " + step.step_id + " off by " +
                                        sci(step.max_amplitude_error));
                            break;
                        }
                    }
                    ++r.checks;
                    if (r.detail.empty() && !check_resources(trace, ledger)) {
                        fail(r, context + ": resource ledger mismatch");
                    }
                    if (!r.detail.empty()) break;
                }
            }
        }
    }
    r.seconds = clock.seconds();
    enforce_budget(r, 60.0);
    r.passed = r.detail.empty();
    return r;
}

CriterionResult run_c6(const SelftestOptions& opt, Audit& audit) {
    CriterionResult r{6, "swapped final-correction order fails for a permutation that is not an "
                         "XOR mask"};
    Stopwatch clock;
    Rng rng = make_rng(opt.seed, 6);
    const Permutation perm(2, {0, 2, 1, 3});
    if (xor_mask_of(perm).has_value()) {
        fail(r, "test permutation unexpectedly factors into single-qubit operations");
    }
    const auto labels = register_labels(3);
    const std::size_t draws = 5;
    for (std::size_t c = 0; c < draws && r.detail.empty(); ++c) {
        std::vector<UnitaryMatrix> blocks;
        for (std::size_t i = 0; i < 4; ++i) blocks.push_back(haar_random_unitary(2, rng));
        const auto op = BlockOperation::permutation(perm, std::move(blocks));
        const auto psi0 = StateVector::haar_random(labels, rng);
        const auto expected = oracle_apply(op, psi0);

        if (!check_enumerated(r, audit,
                              enumerate_bipartite_multiqubit(op, psi0,
                                                             Step5Order::PermutationThenZ),
                              expected, expected_multiqubit_ledger(2),
                              "draw " + std::to_string(c))) {
            break;
        }

        std::size_t failing = 0;
        for (const auto& trace :
             enumerate_bipartite_multiqubit(op, psi0, Step5Order::ZThenPermutation)) {
            audit.absorb(trace);
            ++r.checks;
            if (max_amplitude_diff(trace.final_state, expected) > kUnitaryTol) ++failing;
        }
        if (failing == 0) {
            fail(r, "draw " + std::to_string(c) +
                        ": every branch still passed under the swapped correction order");
        }
    }
    r.cases = draws;
    r.seconds = clock.seconds();
    r.passed = r.detail.empty();
    return r;
}

CriterionResult run_c7(const SelftestOptions& opt, Audit& audit) {
    CriterionResult r{7, "three-party protocol matches direct application and the first-mover "
                         "order commutes"};
    Stopwatch clock;
    Rng rng = make_rng(opt.seed, 7);
    const std::size_t cases = 2 * opt.grid.cases;
    const auto labels = register_labels(3);
    for (std::size_t c = 0; c < cases && r.detail.empty(); ++c) {
        std::vector<UnitaryMatrix> blocks;
        for (std::size_t i = 0; i < 4; ++i) blocks.push_back(haar_random_unitary(2, rng));
        const auto op = BlockOperation::diagonal(std::move(blocks));
        const auto psi0 = StateVector::haar_random(labels, rng);
        const auto alice_first = enumerate_three_party_diagonal(op, psi0, FirstMover::AliceFirst);
        if (!check_enumerated(r, audit, alice_first, oracle_apply(op, psi0),
                              expected_three_party_ledger(), "case " + std::to_string(c))) {
            break;
        }
        const auto bob_first = enumerate_three_party_diagonal(op, psi0, FirstMover::BobFirst);
        for (std::size_t i = 0; i < alice_first.size(); ++i) {
            audit.absorb(bob_first[i]);
            const double err =
                max_amplitude_diff(alice_first[i].final_state, bob_first[i].final_state);
            r.max_error = std::max(r.max_error, err);
            ++r.checks;
            if (err > kUnitaryTol) {
                fail(r, "case " + std::to_string(c) + " branch " +
                            bits_text(alice_first[i].branch_bits()) +
                            ": first-mover orders disagree by " + sci(err));
                break;
            }
        }
    }
    r.cases = cases;
    r.seconds = clock.seconds();
    r.passed = r.detail.empty();
    return r;
}

CriterionResult run_c8(const SelftestOptions& opt, Audit&) {
    CriterionResult r{8, "control-U decomposition reconstructs the assembled operation"};
    Stopwatch clock;
    Rng rng = make_rng(opt.seed, 8);
    const std::size_t cases = 4 * opt.grid.cases;
    for (std::size_t c = 0; c < cases && r.detail.empty(); ++c) {
        const Eigen::Index d = c % 2 == 0 ? 2 : 4;
        const auto op =
            BlockOperation::diagonal({haar_random_unitary(d, rng), haar_random_unitary(d, rng)});
        const auto [local, controlled] = control_u_decomposition(op);

        const double shape_err =
            max_entry_diff(controlled.mat().topLeftCorner(d, d), Matrix::Identity(d, d));
        r.max_error = std::max(r.max_error, shape_err);
        ++r.checks;
        if (shape_err > kUnitaryTol) {
            fail(r, "case " + std::to_string(c) +
                        ": controlled factor acts on the zero block, off by " + sci(shape_err));
            break;
        }

        const Matrix reconstruction =
            kron(UnitaryMatrix::identity(2), local).mat() * controlled.mat();
        const double err = max_entry_diff(reconstruction, build_matrix(op).mat());
        r.max_error = std::max(r.max_error, err);
        ++r.checks;
        if (err > kUnitaryTol) {
            fail(r, "case " + std::to_string(c) + ": reconstruction off by " + sci(err));
        }
    }
    r.cases = cases;
    r.seconds = clock.seconds();
    r.passed = r.detail.empty();
    return r;
}

CriterionResult run_c9(const Audit& audit) {
    CriterionResult r{9, "all recorded operations are local and corrections follow their "
                         "messages"};
    r.cases = audit.traces;
    r.checks = audit.gates + audit.measures + audit.corrections;
    if (audit.traces == 0) {
        fail(r, "no traces were produced for auditing");
    } else if (!audit.locality_issues.empty()) {
        fail(r, audit.locality_issues.front());
    }
    r.passed = r.detail.empty();
    return r;
}

CriterionResult run_c10(const Audit& audit) {
    CriterionResult r{10, "every measurement branch has weight 1/2"};
    r.cases = audit.traces;
    r.checks = audit.measures;
    r.max_error = audit.max_weight_dev;
    if (audit.measures == 0) {
        fail(r, "no measurements were recorded for auditing");
    } else if (!audit.weight_issues.empty()) {
        fail(r, audit.weight_issues.front());
    }
    r.passed = r.detail.empty();
    return r;
}

void print_line(std::ostream& out, const CriterionResult& r) {
    out << "criterion " << std::setw(2) << r.number << " " << (r.passed ? "PASS" : "FAIL") << "  "
        << r.name << " (cases=" << r.cases << ", checks=" << r.checks
        << ", max_error=" << sci(r.max_error) << ", time=" << std::fixed << std::setprecision(1)
        << r.seconds << "s)\n";
    if (!r.passed) {
        out << "    " << r.detail << "\n";
    }
    out.flush();
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
    GridSpec grid;
    if (text.empty()) return grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("grid item \"" + item + "\" must be key=value");
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        std::size_t parsed = 0;
        try {
            if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
                throw std::invalid_argument(value);
            }
            parsed = std::stoull(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("grid value \"" + value + "\" for " + key +
                                        " is not an integer");
        }
        if (parsed == 0) {
            throw std::invalid_argument("grid value for " + key + " must be at least 1");
        }
        if (key == "nmax") {
            grid.nmax = parsed;
        } else if (key == "mmax") {
            grid.mmax = parsed;
        } else if (key == "cases") {
            grid.cases = parsed;
        } else {
            throw std::invalid_argument("unknown grid key \"" + key + "\"");
        }
    }
    return grid;
}

const CriterionResult* SelftestReport::first_failure() const {
    for (const auto& r : criteria) {
        if (!r.passed) return &r;
    }
    return nullptr;
}

SelftestReport run_selftest(const SelftestOptions& options, std::ostream& out) {
    SelftestReport report;
    Audit audit;

    report.criteria.push_back(run_c1(options, audit));
    print_line(out, report.criteria.back());
    report.criteria.push_back(run_c2(options, audit));
    print_line(out, report.criteria.back());
    report.criteria.push_back(run_c3(options, audit));
    print_line(out, report.criteria.back());
    report.criteria.push_back(run_c4(options, audit));
    print_line(out, report.criteria.back());
    report.criteria.push_back(run_c5(options, audit));
    print_line(out, report.criteria.back());
    report.criteria.push_back(run_c6(options, audit));
    print_line(out, report.criteria.back());
    report.criteria.push_back(run_c7(options, audit));
    print_line(out, report.criteria.back());
    report.criteria.push_back(run_c8(options, audit));
    print_line(out, report.criteria.back());
    report.criteria.push_back(run_c9(audit));
    print_line(out, report.criteria.back());
    report.criteria.push_back(run_c10(audit));
    print_line(out, report.criteria.back());

    report.all_passed = true;
    for (const auto& r : report.criteria) {
        report.all_passed = report.all_passed && r.passed;
        report.max_error = std::max(report.max_error, r.max_error);
    }
    return report;
}

}  // namespace loccsim
