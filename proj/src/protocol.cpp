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

#include "loccsim/protocol.hpp"

#include <cmath>
#include <sstream>

namespace loccsim {

namespace {

constexpr const char* kAlice = "Alice";
constexpr const char* kBob = "Bob";
constexpr const char* kCharlie = "Charlie";

void check_bit(int bit, const char* what) {
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument(std::string("branch bit ") + what + " must be 0 or 1");
    }
}

void check_no_collision(const StateVector& psi0, const QubitLabel& ancilla) {
    if (psi0.has_label(ancilla)) {
        throw std::invalid_argument("initial state uses the reserved ancilla label \"" + ancilla +
                                    "\"");
    }
}

/// Sequential executor for one protocol run: applies local operations,
/// enforces ownership, and accumulates the trace.
class Run {
  public:
    Run(std::string protocol, NodeLayout layout, StateVector initial)
        : protocol_(std::move(protocol)), layout_(std::move(layout)), state_(std::move(initial)) {}

    void gate(const PartyName& party, const std::string& name, const UnitaryMatrix& g,
              const std::vector<QubitLabel>& targets, const std::string& step,
              std::optional<std::string> conditioned_on = std::nullopt) {
        layout_.require_local(party, targets);
        state_ = apply_gate(state_, g, targets);
        events_.push_back(GateEvent{party, name, targets, step, std::move(conditioned_on)});
    }

    int measure(const PartyName& party, const QubitLabel& q, int bit, const std::string& step) {
        layout_.require_local(party, {q});
        auto [next, outcome] = measure_branch(state_, q, bit);
        state_ = std::move(next);
        branch_.push_back(outcome);
        events_.push_back(MeasureEvent{party, q, outcome.bit, outcome.probability, step});
        return outcome.bit;
    }

    void message(const PartyName& from, const PartyName& to, int bit, const std::string& id,
                 const std::string& step) {
        ledger_.count_cbit(from, to);
        events_.push_back(MessageEvent{from, to, bit, id, step});
    }

    void ebit(const PartyName& a, const PartyName& b) { ledger_.count_ebit(a, b); }

    void snapshot(const std::string& step_id) { snapshots_.emplace_back(step_id, state_); }

    ProtocolTrace finish() && {
        return ProtocolTrace{std::move(protocol_), std::move(layout_),  std::move(branch_),
                             std::move(events_),   std::move(ledger_),  std::move(snapshots_),
                             std::move(state_)};
    }

  private:
    std::string protocol_;
    NodeLayout layout_;
    StateVector state_;
    std::vector<MeasurementOutcome> branch_;
    std::vector<Event> events_;
    ResourceLedger ledger_;
    std::vector<std::pair<std::string, StateVector>> snapshots_;
};

void check_op_for_bipartite(const BlockOperation& op, const StateVector& psi0, BlockKind kind) {
    if (op.kind() != kind) {
        std::ostringstream msg;
        msg << "operation kind must be " << to_string(kind) << ", got " << to_string(op.kind());
        throw std::invalid_argument(msg.str());
    }
    if (op.control_width() != 1) {
        throw std::invalid_argument("bipartite protocol requires control width 1");
    }
    if (psi0.num_qubits() != op.total_qubits()) {
        std::ostringstream msg;
        msg << "initial state has " << psi0.num_qubits() << " qubits, operation needs "
            << op.total_qubits();
        throw std::invalid_argument(msg.str());
    }
}

ProtocolTrace run_bipartite(const BlockOperation& op, const StateVector& psi0,
                            const BipartiteBranch& branch, bool offdiagonal,
                            XCorrectionTiming timing) {
    check_bit(branch.a, "a");
    check_bit(branch.b, "b");
    check_no_collision(psi0, "A1");
    check_no_collision(psi0, "B1");

    const QubitLabel alice_q = psi0.labels().front();
    const std::vector<QubitLabel> bob_register(psi0.labels().begin() + 1, psi0.labels().end());

    NodeLayout layout;
    layout.parties = {kAlice, kBob};
    layout.device_holder = kBob;
    layout.owns[alice_q] = kAlice;
    layout.owns["A1"] = kAlice;
    layout.owns["B1"] = kBob;
    for (const auto& q : bob_register) layout.owns[q] = kBob;

    Run run(offdiagonal ? "bipartite-offdiagonal" : "bipartite-diagonal", std::move(layout),
            product_state({psi0, StateVector::bell_pair("A1", "B1")}));
    run.ebit(kAlice, kBob);

    const UnitaryMatrix device = build_matrix(op);
    const UnitaryMatrix x = named_gate("X");
    const UnitaryMatrix z = named_gate("Z");
    const UnitaryMatrix h = named_gate("H");

    // step 1: Alice entangles her data qubit with her half of the pair,
    // measures it out, and announces the result.
    run.gate(kAlice, "CNOT", named_gate("CNOT"), {alice_q, "A1"}, "step1");
    const int a = run.measure(kAlice, "A1", branch.a, "step1");
    run.message(kAlice, kBob, a, "a", "step1");
    run.snapshot("step1");

    // The offdiagonal X on Alice's qubit commutes with Bob's steps; the
    // early placement exercises that claim.
    if (offdiagonal && timing == XCorrectionTiming::AfterStep1) {
        run.gate(kAlice, "X", x, {alice_q}, "step2");
    }

    // step 2
    if (a == 1) {
        run.gate(kBob, "X", x, {"B1"}, "step2", "a");
    }
    run.snapshot("step2");

    // step 3: Bob runs the device on his half of the pair plus his register.
    std::vector<QubitLabel> device_targets = {"B1"};
    device_targets.insert(device_targets.end(), bob_register.begin(), bob_register.end());
    run.gate(kBob, "U", device, device_targets, "step3");
    run.snapshot("step3");

    // step 4
    run.gate(kBob, "H", h, {"B1"}, "step4");
    const int b = run.measure(kBob, "B1", branch.b, "step4");
    run.message(kBob, kAlice, b, "b", "step4");
    run.snapshot("step4");

    // step 5: the X (offdiagonal case) must precede the conditional Z.
    if (offdiagonal && timing == XCorrectionTiming::AtStep5) {
        run.gate(kAlice, "X", x, {alice_q}, "step5");
    }
    if (b == 1) {
        run.gate(kAlice, "Z", z, {alice_q}, "step5", "b");
    }
    run.snapshot("step5");

    return std::move(run).finish();
}

}  // namespace

const PartyName& NodeLayout::owner(const QubitLabel& q) const {
    const auto it = owns.find(q);
    if (it == owns.end()) {
        throw std::invalid_argument("no owner recorded for qubit \"" + q + "\"");
    }
    return it->second;
}

void NodeLayout::require_local(const PartyName& party, const std::vector<QubitLabel>& targets) const {
    for (const auto& q : targets) {
        if (owner(q) != party) {
            throw ProtocolViolation("locality violation: " + party + " acting on qubit \"" + q +
                                    "\" owned by " + owner(q));
        }
    }
}

void ResourceLedger::count_ebit(const PartyName& a, const PartyName& b) {
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    ++ebits[key];
}

void ResourceLedger::count_cbit(const PartyName& from, const PartyName& to) {
    ++cbits[{from, to}];
}

int ResourceLedger::total_ebits() const {
    int total = 0;
    for (const auto& [pair, count] : ebits) total += count;
    return total;
}

int ResourceLedger::total_cbits() const {
    int total = 0;
    for (const auto& [pair, count] : cbits) total += count;
    return total;
}

double ProtocolTrace::branch_probability() const {
    double p = 1.0;
    for (const auto& outcome : branch) p *= outcome.probability;
    return p;
}

const StateVector& ProtocolTrace::step_state(const std::string& step_id) const {
    for (const auto& [id, state] : step_states) {
        if (id == step_id) return state;
    }
    throw std::invalid_argument("no state recorded for step \"" + step_id + "\"");
}

std::vector<int> ProtocolTrace::branch_bits() const {
    std::vector<int> bits;
    bits.reserve(branch.size());
    for (const auto& outcome : branch) bits.push_back(outcome.bit);
    return bits;
}

ProtocolTrace run_bipartite_diagonal(const BlockOperation& op, const StateVector& psi0,
                                     const BipartiteBranch& branch) {
    check_op_for_bipartite(op, psi0, BlockKind::Diagonal);
    return run_bipartite(op, psi0, branch, false, XCorrectionTiming::AtStep5);
}

ProtocolTrace run_bipartite_offdiagonal(const BlockOperation& op, const StateVector& psi0,
                                        const BipartiteBranch& branch, XCorrectionTiming timing) {
    check_op_for_bipartite(op, psi0, BlockKind::Offdiagonal);
    return run_bipartite(op, psi0, branch, true, timing);
}

ProtocolTrace run_bipartite_multiqubit(const BlockOperation& op, const StateVector& psi0,
                                       const MultiqubitBranch& branch, Step5Order order) {
    const std::size_t n = op.control_width();
    const std::size_t m = op.block_qubits();
    if (psi0.num_qubits() != n + m) {
        std::ostringstream msg;
        msg << "initial state has " << psi0.num_qubits() << " qubits, operation needs " << n + m;
        throw std::invalid_argument(msg.str());
    }
    if (branch.a.size() != n || branch.b.size() != n) {
        std::ostringstream msg;
        msg << "branch must carry " << n << " bits per round, got " << branch.a.size() << "/"
            << branch.b.size();
        throw std::invalid_argument(msg.str());
    }
    for (std::size_t i = 0; i < n; ++i) {
        check_bit(branch.a[i], "a_i");
        check_bit(branch.b[i], "b_i");
    }

    std::vector<QubitLabel> alice_qs(psi0.labels().begin(), psi0.labels().begin() + n);
    std::vector<QubitLabel> bob_register(psi0.labels().begin() + n, psi0.labels().end());
    std::vector<QubitLabel> alice_anc(n), bob_anc(n);
    for (std::size_t i = 0; i < n; ++i) {
        alice_anc[i] = "A" + std::to_string(i + 1);
        bob_anc[i] = "B" + std::to_string(i + 1);
        check_no_collision(psi0, alice_anc[i]);
        check_no_collision(psi0, bob_anc[i]);
    }

    NodeLayout layout;
    layout.parties = {kAlice, kBob};
    layout.device_holder = kBob;
    for (const auto& q : alice_qs) layout.owns[q] = kAlice;
    for (const auto& q : alice_anc) layout.owns[q] = kAlice;
    for (const auto& q : bob_register) layout.owns[q] = kBob;
    for (const auto& q : bob_anc) layout.owns[q] = kBob;

    std::vector<StateVector> parts = {psi0};
    for (std::size_t i = 0; i < n; ++i) {
        parts.push_back(StateVector::bell_pair(alice_anc[i], bob_anc[i]));
    }

    Run run("bipartite-multiqubit", std::move(layout), product_state(parts));
    for (std::size_t i = 0; i < n; ++i) run.ebit(kAlice, kBob);

    const UnitaryMatrix device = build_matrix(op);
    const UnitaryMatrix cnot = named_gate("CNOT");
    const UnitaryMatrix x = named_gate("X");
    const UnitaryMatrix z = named_gate("Z");
    const UnitaryMatrix h = named_gate("H");

    // step 1
    for (std::size_t i = 0; i < n; ++i) {
        run.gate(kAlice, "CNOT", cnot, {alice_qs[i], alice_anc[i]}, "step1");
    }
    std::vector<int> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = run.measure(kAlice, alice_anc[i], branch.a[i], "step1");
        run.message(kAlice, kBob, a[i], "a" + std::to_string(i + 1), "step1");
    }
    run.snapshot("step1");

    // step 2
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 1) {
            run.gate(kBob, "X", x, {bob_anc[i]}, "step2", "a" + std::to_string(i + 1));
        }
    }
    run.snapshot("step2");

    // step 3
    std::vector<QubitLabel> device_targets = bob_anc;
    device_targets.insert(device_targets.end(), bob_register.begin(), bob_register.end());
    run.gate(kBob, "U", device, device_targets, "step3");
    run.snapshot("step3");

    // step 4
    for (std::size_t i = 0; i < n; ++i) {
        run.gate(kBob, "H", h, {bob_anc[i]}, "step4");
    }
    std::vector<int> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = run.measure(kBob, bob_anc[i], branch.b[i], "step4");
        run.message(kBob, kAlice, b[i], "b" + std::to_string(i + 1), "step4");
    }
    run.snapshot("step4");

    // step 5: the basis permutation acts first, then the conditional Z
    // corrections on the permuted basis. Reversing the order is wrong for
    // permutations that are not XOR masks.
    const auto apply_perm = [&] {
        if (!op.perm().is_identity()) {
            run.gate(kAlice, "R(x)", permutation_operator(op.perm()), alice_qs, "step5");
        }
    };
    const auto apply_z = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            if (b[i] == 1) {
                run.gate(kAlice, "Z", z, {alice_qs[i]}, "step5", "b" + std::to_string(i + 1));
            }
        }
    };
    if (order == Step5Order::PermutationThenZ) {
        apply_perm();
        apply_z();
    } else {
        apply_z();
        apply_perm();
    }
    run.snapshot("step5");

    return std::move(run).finish();
}

ProtocolTrace run_three_party_diagonal(const BlockOperation& op, const StateVector& psi0,
                                       const ThreePartyBranch& branch, FirstMover mover) {
    if (op.control_width() != 2 || op.block_qubits() != 1) {
        throw std::invalid_argument(
            "three-party protocol requires 4 single-qubit blocks (control width 2)");
    }
    const auto mask = xor_mask_of(op.perm());
    if (!mask.has_value()) {
        throw std::invalid_argument(
            "three-party protocol requires a permutation that is a product of single-qubit "
            "operations");
    }
    if (psi0.num_qubits() != 3) {
        throw std::invalid_argument("three-party protocol requires a 3-qubit initial state");
    }
    check_bit(branch.a, "a");
    check_bit(branch.b, "b");
    check_bit(branch.c1, "c1");
    check_bit(branch.c2, "c2");
    for (const auto* anc : {"A1", "B1", "C1", "C2"}) {
        check_no_collision(psi0, anc);
    }

    const QubitLabel alice_q = psi0.labels()[0];
    const QubitLabel bob_q = psi0.labels()[1];
    const QubitLabel charlie_q = psi0.labels()[2];

    NodeLayout layout;
    layout.parties = {kAlice, kBob, kCharlie};
    layout.device_holder = kCharlie;
    layout.owns[alice_q] = kAlice;
    layout.owns[bob_q] = kBob;
    layout.owns[charlie_q] = kCharlie;
    layout.owns["A1"] = kAlice;
    layout.owns["B1"] = kBob;
    layout.owns["C1"] = kCharlie;
    layout.owns["C2"] = kCharlie;

    Run run("three-party", std::move(layout),
            product_state({psi0, StateVector::bell_pair("A1", "C1"),
                           StateVector::bell_pair("B1", "C2")}));
    run.ebit(kAlice, kCharlie);
    run.ebit(kBob, kCharlie);

    const UnitaryMatrix device = build_matrix(op);
    const UnitaryMatrix cnot = named_gate("CNOT");
    const UnitaryMatrix x = named_gate("X");
    const UnitaryMatrix z = named_gate("Z");
    const UnitaryMatrix h = named_gate("H");

    const auto alice_step1 = [&] {
        run.gate(kAlice, "CNOT", cnot, {alice_q, "A1"}, "step1");
        const int a = run.measure(kAlice, "A1", branch.a, "step1");
        run.message(kAlice, kCharlie, a, "a", "step1");
        run.snapshot("step1");
        return a;
    };
    const auto bob_step1 = [&] {
        run.gate(kBob, "CNOT", cnot, {bob_q, "B1"}, "step1'");
        const int b = run.measure(kBob, "B1", branch.b, "step1'");
        run.message(kBob, kCharlie, b, "b", "step1'");
        run.snapshot("step1'");
        return b;
    };

    int a = 0;
    int b = 0;
    if (mover == FirstMover::AliceFirst) {
        a = alice_step1();
        b = bob_step1();
    } else {
        b = bob_step1();
        a = alice_step1();
    }

    // step 2
    if (a == 1) run.gate(kCharlie, "X", x, {"C1"}, "step2", "a");
    if (b == 1) run.gate(kCharlie, "X", x, {"C2"}, "step2", "b");
    run.snapshot("step2");

    // step 3
    run.gate(kCharlie, "U", device, {"C1", "C2", charlie_q}, "step3");
    run.snapshot("step3");

    // step 4
    run.gate(kCharlie, "H", h, {"C1"}, "step4");
    run.gate(kCharlie, "H", h, {"C2"}, "step4");
    const int c1 = run.measure(kCharlie, "C1", branch.c1, "step4");
    run.message(kCharlie, kAlice, c1, "c1", "step4");
    const int c2 = run.measure(kCharlie, "C2", branch.c2, "step4");
    run.message(kCharlie, kBob, c2, "c2", "step4");
    run.snapshot("step4");

    // steps 5 and 5': each party applies its factor of the permutation (an
    // I or X), then its conditional Z.
    if ((*mask >> 1) & 1U) run.gate(kAlice, "X", x, {alice_q}, "step5");
    if (c1 == 1) run.gate(kAlice, "Z", z, {alice_q}, "step5", "c1");
    run.snapshot("step5");
    if (*mask & 1U) run.gate(kBob, "X", x, {bob_q}, "step5'");
    if (c2 == 1) run.gate(kBob, "Z", z, {bob_q}, "step5'", "c2");
    run.snapshot("step5'");

    return std::move(run).finish();
}

std::vector<ProtocolTrace> enumerate_branches(const BranchRunner& runner, std::size_t num_bits) {
    const std::size_t count = std::size_t{1} << num_bits;
    std::vector<ProtocolTrace> traces;
    traces.reserve(count);
    double total_probability = 0.0;
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<int> bits(num_bits);
        for (std::size_t j = 0; j < num_bits; ++j) {
            bits[j] = static_cast<int>((idx >> (num_bits - 1 - j)) & 1U);
        }
        traces.push_back(runner(bits));
        total_probability += traces.back().branch_probability();
    }
    if (std::abs(total_probability - 1.0) > kUnitaryTol) {
        std::ostringstream msg;
        msg << "branch probabilities sum to " << total_probability << ", expected 1";
        throw ProtocolViolation(msg.str());
    }
    return traces;
}

std::vector<ProtocolTrace> enumerate_bipartite_diagonal(const BlockOperation& op,
                                                        const StateVector& psi0) {
    return enumerate_branches(
        [&](const std::vector<int>& bits) {
            return run_bipartite_diagonal(op, psi0, {bits[0], bits[1]});
        },
        2);
}

std::vector<ProtocolTrace> enumerate_bipartite_offdiagonal(const BlockOperation& op,
                                                           const StateVector& psi0,
                                                           XCorrectionTiming timing) {
    return enumerate_branches(
        [&](const std::vector<int>& bits) {
            return run_bipartite_offdiagonal(op, psi0, {bits[0], bits[1]}, timing);
        },
        2);
}

std::vector<ProtocolTrace> enumerate_bipartite_multiqubit(const BlockOperation& op,
                                                          const StateVector& psi0,
                                                          Step5Order order) {
    const std::size_t n = op.control_width();
    return enumerate_branches(
        [&](const std::vector<int>& bits) {
            MultiqubitBranch branch;
            branch.a.assign(bits.begin(), bits.begin() + n);
            branch.b.assign(bits.begin() + n, bits.end());
            return run_bipartite_multiqubit(op, psi0, branch, order);
        },
        2 * n);
}

std::vector<ProtocolTrace> enumerate_three_party_diagonal(const BlockOperation& op,
                                                          const StateVector& psi0,
                                                          FirstMover mover) {
    return enumerate_branches(
        [&](const std::vector<int>& bits) {
            return run_three_party_diagonal(op, psi0, {bits[0], bits[1], bits[2], bits[3]}, mover);
        },
        4);
}

}  // namespace loccsim
