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

#pragma once

/**
 * @file
 * Distributed-protocol engine for implementing nonlocal block operations
 * with local gates, pre-shared Bell pairs, and classical messages.
 *
 * Four protocol families are provided; each consumes an explicit branch
 * (one bit per projective measurement), so every measurement outcome can be
 * enumerated deterministically. A run yields a ProtocolTrace: the ordered
 * event log, per-step state snapshots, the resource ledger, and the final
 * state on the data qubits.
 */

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "loccsim/blockops.hpp"
#include "loccsim/statevector.hpp"

namespace loccsim {

using PartyName = std::string;

/// A gate or measurement touching qubits its party does not own. This is an
/// engine bug, not a user error.
class ProtocolViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Assignment of qubits to named parties.
struct NodeLayout {
    std::vector<PartyName> parties;
    std::map<QubitLabel, PartyName> owns;
    PartyName device_holder;

    const PartyName& owner(const QubitLabel& q) const;
    /// Throws ProtocolViolation unless party owns every target.
    void require_local(const PartyName& party, const std::vector<QubitLabel>& targets) const;
};

struct GateEvent {
    PartyName party;
    std::string gate;
    std::vector<QubitLabel> targets;
    std::string step;
    /// Message id this gate is conditioned on, when it is a correction.
    std::optional<std::string> conditioned_on;
};

struct MeasureEvent {
    PartyName party;
    QubitLabel qubit;
    int bit = 0;
    double probability = 0.0;
    std::string step;
};

struct MessageEvent {
    PartyName from;
    PartyName to;
    int bit = 0;
    std::string id;
    std::string step;
};

using Event = std::variant<GateEvent, MeasureEvent, MessageEvent>;

/// Entanglement consumed and classical bits sent, per party pair.
struct ResourceLedger {
    /// Bell pairs consumed, keyed by the alphabetically sorted party pair.
    std::map<std::pair<PartyName, PartyName>, int> ebits;
    /// Classical bits, keyed by (sender, receiver).
    std::map<std::pair<PartyName, PartyName>, int> cbits;

    void count_ebit(const PartyName& a, const PartyName& b);
    void count_cbit(const PartyName& from, const PartyName& to);
    int total_ebits() const;
    int total_cbits() const;

    bool operator==(const ResourceLedger&) const = default;
};

struct ProtocolTrace {
    std::string protocol;
    NodeLayout layout;
    std::vector<MeasurementOutcome> branch;
    std::vector<Event> events;
    ResourceLedger ledger;
    /// States after each protocol step, keyed by step id ("step1", ...).
    std::vector<std::pair<std::string, StateVector>> step_states;
    StateVector final_state;

    /// Joint probability of this branch (product of outcome weights).
    double branch_probability() const;
    const StateVector& step_state(const std::string& step_id) const;
    /// Branch bits in measurement order.
    std::vector<int> branch_bits() const;
};

// Option knobs. The defaults are the canonical schedules; the alternates
// exist so tests can demonstrate commutativity (or the lack of it).

/// When Alice applies the extra X of the offdiagonal protocol. It always
/// precedes her conditional Z; only its position relative to Bob's steps
/// moves.
enum class XCorrectionTiming { AtStep5, AfterStep1 };

/// Order of the two final corrections in the multiqubit protocol. The basis
/// permutation must precede the conditional Z corrections; ZThenPermutation
/// is deliberately wrong for non-XOR permutations.
enum class Step5Order { PermutationThenZ, ZThenPermutation };

/// Which party performs its entangling step first in the three-party
/// protocol. The two orders commute.
enum class FirstMover { AliceFirst, BobFirst };

struct BipartiteBranch {
    int a = 0;
    int b = 0;
};

struct MultiqubitBranch {
    std::vector<int> a;
    std::vector<int> b;
};

struct ThreePartyBranch {
    int a = 0;
    int b = 0;
    int c1 = 0;
    int c2 = 0;
};

/**
 * Diagonal block operation on Alice's qubit (first label of psi0) and Bob's
 * register (the remaining labels), implemented with one Bell pair and one
 * classical bit in each direction.
 */
ProtocolTrace run_bipartite_diagonal(const BlockOperation& op, const StateVector& psi0,
                                     const BipartiteBranch& branch);

/// Offdiagonal variant: identical schedule plus Alice's X on her data qubit.
ProtocolTrace run_bipartite_offdiagonal(const BlockOperation& op, const StateVector& psi0,
                                        const BipartiteBranch& branch,
                                        XCorrectionTiming timing = XCorrectionTiming::AtStep5);

/**
 * Permutation block operation with N control qubits on Alice's side (the
 * first N labels of psi0) and M target qubits on Bob's side, consuming N
 * Bell pairs and N classical bits each way. Accepts any block kind, since
 * diagonal and offdiagonal operations are permutation operations with fixed
 * permutations.
 */
ProtocolTrace run_bipartite_multiqubit(const BlockOperation& op, const StateVector& psi0,
                                       const MultiqubitBranch& branch,
                                       Step5Order order = Step5Order::PermutationThenZ);

/**
 * Diagonal block operation over three parties: Alice and Bob each hold one
 * control qubit, Charlie holds the target qubit and the device. Consumes one
 * Bell pair Alice-Charlie and one Bob-Charlie plus four classical bits.
 * Permutation-kind operations are admitted only when the permutation is a
 * product of single-qubit operations (an XOR mask), since each party can
 * then apply its own factor locally.
 */
ProtocolTrace run_three_party_diagonal(const BlockOperation& op, const StateVector& psi0,
                                       const ThreePartyBranch& branch,
                                       FirstMover mover = FirstMover::AliceFirst);

using BranchRunner = std::function<ProtocolTrace(const std::vector<int>&)>;

/**
 * Runs one trace per assignment of the given number of branch bits (first
 * bit most significant in the branch index) and checks that the branch
 * probabilities sum to 1.
 */
std::vector<ProtocolTrace> enumerate_branches(const BranchRunner& runner, std::size_t num_bits);

std::vector<ProtocolTrace> enumerate_bipartite_diagonal(const BlockOperation& op,
                                                        const StateVector& psi0);
std::vector<ProtocolTrace> enumerate_bipartite_offdiagonal(
    const BlockOperation& op, const StateVector& psi0,
    XCorrectionTiming timing = XCorrectionTiming::AtStep5);
std::vector<ProtocolTrace> enumerate_bipartite_multiqubit(
    const BlockOperation& op, const StateVector& psi0,
    Step5Order order = Step5Order::PermutationThenZ);
std::vector<ProtocolTrace> enumerate_three_party_diagonal(
    const BlockOperation& op, const StateVector& psi0,
    FirstMover mover = FirstMover::AliceFirst);

}  // namespace loccsim
