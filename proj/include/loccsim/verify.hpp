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
 * Independent checks on protocol traces: the direct-application oracle,
 * step-by-step state predictions, resource accounting, and event-log audits.
 */

#include <string>
#include <vector>

#include "loccsim/blockops.hpp"
#include "loccsim/protocol.hpp"
#include "loccsim/statevector.hpp"

namespace loccsim {

/// Applies the assembled operation matrix to the state in one shot. The
/// reference every protocol's final state is held against.
StateVector oracle_apply(const BlockOperation& op, const StateVector& psi0);

struct StepAssertion {
    std::string step_id;
    double max_amplitude_error = 0.0;
    bool passed = false;
};

/**
 * Predicts the state after each step of the control-side protocol by direct
 * index arithmetic on psi0 (no gate application) and compares against the
 * recorded snapshots. Valid for the multiqubit runner and for the bipartite
 * runners on their canonical schedules.
 */
std::vector<StepAssertion> check_step_states(const ProtocolTrace& trace, const BlockOperation& op,
                                             const StateVector& psi0, double tol = kUnitaryTol);

/// Exact comparison, every party pair and direction.
bool check_resources(const ProtocolTrace& trace, const ResourceLedger& expected);

/// 1 Bell pair, 1 classical bit each way between Alice and Bob.
ResourceLedger expected_bipartite_ledger();

/// n Bell pairs, n classical bits each way between Alice and Bob.
ResourceLedger expected_multiqubit_ledger(std::size_t n);

/// Bell pairs Alice-Charlie and Bob-Charlie, one classical bit inward from
/// each of Alice and Bob and one outward from Charlie to each.
ResourceLedger expected_three_party_ledger();

/**
 * Scans the event log for operations a party performed on qubits it does
 * not own and for conditional corrections not preceded by the message they
 * depend on. Returns one description per issue; empty means clean.
 */
std::vector<std::string> audit_locality(const ProtocolTrace& trace);

/// Checks that every recorded measurement had weight 1/2 within tol.
std::vector<std::string> audit_branch_weights(const ProtocolTrace& trace,
                                              double tol = kUnitaryTol);

}  // namespace loccsim
