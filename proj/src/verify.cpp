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

#include "loccsim/verify.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <sstream>

namespace loccsim {

namespace {

double sign_bit(std::size_t parity_word) {
    return (std::popcount(parity_word) & 1U) ? -1.0 : 1.0;
}

std::string describe_targets(const std::vector<QubitLabel>& targets) {
    std::string out;
    for (const auto& q : targets) {
        if (!out.empty()) out += ", ";
        out += q;
    }
    return out;
}

}  // namespace

StateVector oracle_apply(const BlockOperation& op, const StateVector& psi0) {
    const UnitaryMatrix u = build_matrix(op);
    if (psi0.dim() != u.dim()) {
        std::ostringstream msg;
        msg << "state dimension " << psi0.dim() << " does not match operation dimension "
            << u.dim();
        throw std::invalid_argument(msg.str());
    }
    return StateVector(psi0.labels(), u.mat() * psi0.amps());
}

std::vector<StepAssertion> check_step_states(const ProtocolTrace& trace, const BlockOperation& op,
                                             const StateVector& psi0, double tol) {
    const std::size_t n = op.control_width();
    const std::size_t dm = std::size_t{1} << op.block_qubits();
    const std::size_t dn = std::size_t{1} << n;

    const auto bits = trace.branch_bits();
    if (bits.size() != 2 * n) {
        std::ostringstream msg;
        msg << "trace has " << bits.size() << " branch bits, expected " << 2 * n;
        throw std::invalid_argument(msg.str());
    }
    std::size_t a = 0;
    std::size_t b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        a = (a << 1) | static_cast<std::size_t>(bits[i]);
        b = (b << 1) | static_cast<std::size_t>(bits[n + i]);
    }

    // Label order while the device-side ancillas are alive: the data
    // register first, then B1..BN, so the wide index is data*2^n + anc.
    std::vector<QubitLabel> wide_labels = psi0.labels();
    for (std::size_t i = 0; i < n; ++i) {
        wide_labels.push_back("B" + std::to_string(i + 1));
    }
    const std::size_t wide_dim = dn * dm * dn;

    // Transformed data blocks: w_k = u_k applied to the k-th slice of psi0.
    std::vector<Vector> w(dn);
    for (std::size_t k = 0; k < dn; ++k) {
        w[k] = op.blocks()[k].mat() *
               psi0.amps().segment(static_cast<Eigen::Index>(k * dm), static_cast<Eigen::Index>(dm));
    }

    std::vector<StepAssertion> out;
    const auto compare = [&](const std::string& step_id, const StateVector& expected) {
        const double err = max_amplitude_diff(trace.step_state(step_id), expected);
        out.push_back({step_id, err, err <= tol});
    };

    // step 1: the ancilla registers hold k xor a alongside data index k.
    Vector v1 = Vector::Zero(static_cast<Eigen::Index>(wide_dim));
    for (std::size_t k = 0; k < dn; ++k) {
        for (std::size_t z = 0; z < dm; ++z) {
            v1[static_cast<Eigen::Index>((k * dm + z) * dn + (k ^ a))] =
                psi0.amps()[static_cast<Eigen::Index>(k * dm + z)];
        }
    }
    compare("step1", StateVector(wide_labels, std::move(v1)));

    // step 2: the announced bits flip the ancillas back to k.
    Vector v2 = Vector::Zero(static_cast<Eigen::Index>(wide_dim));
    for (std::size_t k = 0; k < dn; ++k) {
        for (std::size_t z = 0; z < dm; ++z) {
            v2[static_cast<Eigen::Index>((k * dm + z) * dn + k)] =
                psi0.amps()[static_cast<Eigen::Index>(k * dm + z)];
        }
    }
    compare("step2", StateVector(wide_labels, std::move(v2)));

    // step 3: block k's data is transformed by u_k while its ancilla index
    // moves to p(k).
    Vector v3 = Vector::Zero(static_cast<Eigen::Index>(wide_dim));
    for (std::size_t k = 0; k < dn; ++k) {
        for (std::size_t z = 0; z < dm; ++z) {
            v3[static_cast<Eigen::Index>((k * dm + z) * dn + op.perm()(k))] =
                w[k][static_cast<Eigen::Index>(z)];
        }
    }
    compare("step3", StateVector(wide_labels, std::move(v3)));

    // step 4: the ancillas are gone; each block picks up the parity sign of
    // b against its permuted index.
    Vector v4 = Vector::Zero(static_cast<Eigen::Index>(dn * dm));
    for (std::size_t k = 0; k < dn; ++k) {
        for (std::size_t z = 0; z < dm; ++z) {
            v4[static_cast<Eigen::Index>(k * dm + z)] =
                sign_bit(b & op.perm()(k)) * w[k][static_cast<Eigen::Index>(z)];
        }
    }
    compare("step4", StateVector(psi0.labels(), std::move(v4)));

    // step 5: signs cancelled and the control register relabeled to p(k);
    // this is the direct application of the operation.
    Vector v5 = Vector::Zero(static_cast<Eigen::Index>(dn * dm));
    for (std::size_t k = 0; k < dn; ++k) {
        for (std::size_t z = 0; z < dm; ++z) {
            v5[static_cast<Eigen::Index>(op.perm()(k) * dm + z)] = w[k][static_cast<Eigen::Index>(z)];
        }
    }
    compare("step5", StateVector(psi0.labels(), std::move(v5)));

    return out;
}

bool check_resources(const ProtocolTrace& trace, const ResourceLedger& expected) {
    return trace.ledger == expected;
}

ResourceLedger expected_bipartite_ledger() { return expected_multiqubit_ledger(1); }

ResourceLedger expected_multiqubit_ledger(std::size_t n) {
    ResourceLedger ledger;
    for (std::size_t i = 0; i < n; ++i) {
        ledger.count_ebit("Alice", "Bob");
        ledger.count_cbit("Alice", "Bob");
        ledger.count_cbit("Bob", "Alice");
    }
    return ledger;
}

ResourceLedger expected_three_party_ledger() {
    ResourceLedger ledger;
    ledger.count_ebit("Alice", "Charlie");
    ledger.count_ebit("Bob", "Charlie");
    ledger.count_cbit("Alice", "Charlie");
    ledger.count_cbit("Bob", "Charlie");
    ledger.count_cbit("Charlie", "Alice");
    ledger.count_cbit("Charlie", "Bob");
    return ledger;
}

std::vector<std::string> audit_locality(const ProtocolTrace& trace) {
    std::vector<std::string> issues;
    // Message ids delivered so far, with their recipient.
    std::map<std::string, PartyName> delivered;

    const auto check_owner = [&](const PartyName& party, const QubitLabel& q,
                                 const std::string& what) {
        const PartyName& owner = trace.layout.owner(q);
        if (owner != party) {
            issues.push_back(party + " " + what + " qubit \"" + q + "\" owned by " + owner);
        }
    };

    for (const auto& event : trace.events) {
        if (const auto* g = std::get_if<GateEvent>(&event)) {
            for (const auto& q : g->targets) {
                check_owner(g->party, q, "applied " + g->gate + " to");
            }
            if (g->conditioned_on.has_value()) {
                const auto it = delivered.find(*g->conditioned_on);
                if (it == delivered.end()) {
                    issues.push_back(g->party + " applied " + g->gate + " on [" +
                                     describe_targets(g->targets) + "] conditioned on message \"" +
                                     *g->conditioned_on + "\" before it was sent");
                } else if (it->second != g->party) {
                    issues.push_back(g->party + " applied " + g->gate + " conditioned on message \"" +
                                     *g->conditioned_on + "\" addressed to " + it->second);
                }
            }
        } else if (const auto* m = std::get_if<MeasureEvent>(&event)) {
            check_owner(m->party, m->qubit, "measured");
        } else if (const auto* msg = std::get_if<MessageEvent>(&event)) {
            if (msg->from == msg->to) {
                issues.push_back("message \"" + msg->id + "\" sent from " + msg->from +
                                 " to itself");
            }
            delivered[msg->id] = msg->to;
        }
    }
    return issues;
}

std::vector<std::string> audit_branch_weights(const ProtocolTrace& trace, double tol) {
    std::vector<std::string> issues;
    for (const auto& event : trace.events) {
        if (const auto* m = std::get_if<MeasureEvent>(&event)) {
            if (std::abs(m->probability - 0.5) > tol) {
                std::ostringstream text;
                text << m->party << " measured \"" << m->qubit << "\" with weight "
                     << m->probability << ", expected 1/2";
                issues.push_back(text.str());
            }
        }
    }
    return issues;
}

}  // namespace loccsim
