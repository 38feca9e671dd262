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

#include <doctest.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "loccsim/blockops.hpp"
#include "loccsim/linalg.hpp"
#include "loccsim/protocol.hpp"
#include "loccsim/statevector.hpp"

namespace loccsim {
namespace {

std::vector<UnitaryMatrix> haar_blocks(std::size_t count, Eigen::Index dim, Rng& rng) {
    std::vector<UnitaryMatrix> blocks;
    blocks.reserve(count);
    for (std::size_t i = 0; i < count; ++i) blocks.push_back(haar_random_unitary(dim, rng));
    return blocks;
}

// A skeletal two-party trace carrying only the fields the audits read.
ProtocolTrace audit_trace(std::vector<Event> events) {
    NodeLayout layout;
    layout.parties = {"Alice", "Bob"};
    layout.owns = {{"A", "Alice"}, {"B", "Bob"}};
    layout.device_holder = "Bob";
    return ProtocolTrace{"handmade",
                         std::move(layout),
                         {},
                         std::move(events),
                         {},
                         {},
                         StateVector::basis_state({"A", "B"}, 0)};
}

TEST_CASE("oracle_apply multiplies the assembled matrix into the state") {
    Rng rng(501);
    const auto psi0 = StateVector::haar_random({"A", "B"}, rng);

    const auto eye = UnitaryMatrix::identity(2);
    CHECK(max_amplitude_diff(oracle_apply(BlockOperation::diagonal({eye, eye}), psi0), psi0) <
          kUnitaryTol);

    const auto cnot = BlockOperation::diagonal({eye, named_gate("X")});
    const auto flipped = oracle_apply(cnot, StateVector::basis_state({"A", "B"}, 0b10));
    CHECK(max_amplitude_diff(flipped, StateVector::basis_state({"A", "B"}, 0b11)) < kUnitaryTol);

    CHECK_THROWS_AS(oracle_apply(cnot, StateVector::haar_random({"A", "B", "C"}, rng)),
                    std::invalid_argument);
}

TEST_CASE("oracle_apply keeps the block structure of a diagonal operation") {
    Rng rng(502);
    const auto blocks = haar_blocks(2, 2, rng);
    const auto op = BlockOperation::diagonal(blocks);

    const double alpha0 = 0.6;
    const double alpha1 = 0.8;
    const Vector xi0 = haar_random_vector(2, rng);
    const Vector xi1 = haar_random_vector(2, rng);
    Vector amps(4);
    for (Eigen::Index j = 0; j < 2; ++j) {
        amps[j] = alpha0 * xi0[j];
        amps[2 + j] = alpha1 * xi1[j];
    }
    const StateVector psi0({"A", "B"}, amps);

    const Vector out0 = blocks[0].mat() * xi0;
    const Vector out1 = blocks[1].mat() * xi1;
    Vector want(4);
    for (Eigen::Index j = 0; j < 2; ++j) {
        want[j] = alpha0 * out0[j];
        want[2 + j] = alpha1 * out1[j];
    }

    CHECK(max_amplitude_diff(oracle_apply(op, psi0), StateVector({"A", "B"}, want)) <
          kUnitaryTol);
}

TEST_CASE("check_step_states passes on a bipartite run") {
    Rng rng(503);
    const auto eye = UnitaryMatrix::identity(2);
    const auto op = BlockOperation::diagonal({eye, named_gate("X")});
    const auto psi0 = StateVector::haar_random({"A", "B"}, rng);
    const auto trace = run_bipartite_diagonal(op, psi0, {1, 1});

    const auto steps = check_step_states(trace, op, psi0);
    REQUIRE(steps.size() == 5);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        CHECK(steps[i].step_id == "step" + std::to_string(i + 1));
        CHECK(steps[i].passed);
        CHECK(steps[i].max_amplitude_error < kUnitaryTol);
    }

    // The state after Bob undoes the a flip, written out by hand: the
    // ancilla copies the control bit and the data register is untouched.
    Vector want = Vector::Zero(8);
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t z = 0; z < 2; ++z) {
            want[static_cast<Eigen::Index>((k * 2 + z) * 2 + k)] =
                psi0.amps()[static_cast<Eigen::Index>(k * 2 + z)];
        }
    }
    CHECK(max_amplitude_diff(trace.step_state("step2"), StateVector({"A", "B", "B1"}, want)) <
          kUnitaryTol);
}

TEST_CASE("check_step_states passes on every branch of a multiqubit run") {
    Rng rng(504);
    const auto op =
        BlockOperation::permutation(Permutation(2, {1, 0, 3, 2}), haar_blocks(4, 2, rng));
    const auto psi0 = StateVector::haar_random({"c1", "c2", "t"}, rng);

    for (const auto& trace : enumerate_bipartite_multiqubit(op, psi0)) {
        const auto steps = check_step_states(trace, op, psi0);
        REQUIRE(steps.size() == 5);
        for (const auto& step : steps) {
            CHECK(step.passed);
        }
    }
}

TEST_CASE("check_step_states flags the swapped correction order at step 5") {
    Rng rng(505);
    const auto op =
        BlockOperation::permutation(Permutation(2, {0, 2, 1, 3}), haar_blocks(4, 2, rng));
    const auto psi0 = StateVector::haar_random({"c1", "c2", "t"}, rng);

    const auto trace =
        run_bipartite_multiqubit(op, psi0, {{0, 0}, {0, 1}}, Step5Order::ZThenPermutation);
    const auto steps = check_step_states(trace, op, psi0);
    REQUIRE(steps.size() == 5);
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        CHECK(steps[i].passed);
    }
    CHECK_FALSE(steps.back().passed);
    CHECK(steps.back().step_id == "step5");
    CHECK(steps.back().max_amplitude_error > 0.1);
}

TEST_CASE("expected ledgers spell out the protocol budgets") {
    const auto bipartite = expected_bipartite_ledger();
    CHECK(bipartite.total_ebits() == 1);
    CHECK(bipartite.total_cbits() == 2);
    CHECK(bipartite == expected_multiqubit_ledger(1));

    const auto multi = expected_multiqubit_ledger(3);
    CHECK(multi.total_ebits() == 3);
    CHECK(multi.total_cbits() == 6);
    CHECK(multi.ebits.at({"Alice", "Bob"}) == 3);
    CHECK(multi.cbits.at({"Alice", "Bob"}) == 3);
    CHECK(multi.cbits.at({"Bob", "Alice"}) == 3);

    const auto three = expected_three_party_ledger();
    CHECK(three.total_ebits() == 2);
    CHECK(three.total_cbits() == 4);
    CHECK(three.ebits.at({"Alice", "Charlie"}) == 1);
    CHECK(three.ebits.at({"Bob", "Charlie"}) == 1);
}

TEST_CASE("check_resources compares the ledger exactly") {
    Rng rng(506);
    const auto op = BlockOperation::diagonal(haar_blocks(2, 2, rng));
    const auto psi0 = StateVector::haar_random({"A", "B"}, rng);
    const auto trace = run_bipartite_diagonal(op, psi0, {0, 1});

    CHECK(check_resources(trace, expected_bipartite_ledger()));
    CHECK_FALSE(check_resources(trace, expected_multiqubit_ledger(2)));
    CHECK_FALSE(check_resources(trace, expected_three_party_ledger()));
}

TEST_CASE("audit_locality accepts a clean protocol run") {
    Rng rng(507);
    const auto op = BlockOperation::diagonal(haar_blocks(4, 2, rng));
    const auto psi0 = StateVector::haar_random({"P", "Q", "R"}, rng);
    for (const auto& trace : enumerate_three_party_diagonal(op, psi0)) {
        CHECK(audit_locality(trace).empty());
        CHECK(audit_branch_weights(trace).empty());
    }
}

TEST_CASE("audit_locality flags gates and measurements on foreign qubits") {
    const auto trace = audit_trace({
        GateEvent{"Alice", "X", {"B"}, "step1", std::nullopt},
        MeasureEvent{"Bob", "A", 0, 0.5, "step1"},
    });
    const auto issues = audit_locality(trace);
    REQUIRE(issues.size() == 2);
    CHECK(issues[0] == "Alice applied X to qubit \"B\" owned by Bob");
    CHECK(issues[1] == "Bob measured qubit \"A\" owned by Alice");
}

TEST_CASE("audit_locality enforces message precedence and routing") {
    SUBCASE("correction before its message") {
        const auto trace = audit_trace({
            GateEvent{"Bob", "X", {"B"}, "step2", "a"},
            MessageEvent{"Alice", "Bob", 1, "a", "step1"},
        });
        const auto issues = audit_locality(trace);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].find("before it was sent") != std::string::npos);
    }

    SUBCASE("message sent to its own sender") {
        const auto trace = audit_trace({
            MessageEvent{"Alice", "Alice", 0, "a", "step1"},
        });
        const auto issues = audit_locality(trace);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].find("to itself") != std::string::npos);
    }

    SUBCASE("correction keyed to a message addressed elsewhere") {
        const auto trace = audit_trace({
            MessageEvent{"Bob", "Alice", 1, "b", "step4"},
            GateEvent{"Bob", "Z", {"B"}, "step5", "b"},
        });
        const auto issues = audit_locality(trace);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].find("addressed to Alice") != std::string::npos);
    }

    SUBCASE("well-formed correction") {
        const auto trace = audit_trace({
            MessageEvent{"Alice", "Bob", 1, "a", "step1"},
            GateEvent{"Bob", "X", {"B"}, "step2", "a"},
        });
        CHECK(audit_locality(trace).empty());
    }
}

TEST_CASE("audit_branch_weights flags measurements away from 1/2") {
    const auto trace = audit_trace({
        MeasureEvent{"Alice", "A", 0, 0.3, "step1"},
        MeasureEvent{"Bob", "B", 1, 0.5, "step4"},
    });
    const auto issues = audit_branch_weights(trace);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].find("weight 0.3") != std::string::npos);
    CHECK(issues[0].find("\"A\"") != std::string::npos);
}

}  // namespace
}  // namespace loccsim
