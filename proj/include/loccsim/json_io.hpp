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
 * JSON serialization for matrices, states, operations, and traces, plus the
 * run-configuration reader.
 *
 * Matrices serialize as row-major nested arrays of [re, im] pairs. States
 * serialize as {"labels": [...], "amps": [[re, im], ...]}. Keys come out
 * alphabetically sorted, so serialized output is byte-stable for a fixed
 * input.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "loccsim/blockops.hpp"
#include "loccsim/protocol.hpp"
#include "loccsim/statevector.hpp"

namespace loccsim {

using Json = nlohmann::json;

/// Malformed configuration or serialized input. The message names the
/// offending field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

Json to_json(const Matrix& m);
Json to_json(const StateVector& s);
Json to_json(const BlockOperation& op);
Json to_json(const ResourceLedger& ledger);
Json to_json(const Event& event);

/// Full trace record: branch bits, probability, events, ledger, and final
/// state. Step snapshots are included only on request (they are large).
Json trace_to_json(const ProtocolTrace& trace, bool include_step_states = false);

/// `field` prefixes every error message, e.g. "operation.blocks[1]".
Matrix matrix_from_json(const Json& j, const std::string& field);
StateVector state_from_json(const Json& j, const std::string& field);
BlockOperation operation_from_json(const Json& j, const std::string& field = "operation");

/// One protocol run request, as read from a config file.
struct RunConfig {
    std::string protocol;
    BlockOperation operation;
    /// Explicit initial state; empty means draw a Haar-random one from seed.
    std::optional<StateVector> initial_state;
    std::string mode = "enumerate";
    /// Drives the random initial state and, in sample mode, the branch draw.
    std::uint64_t seed = 1;
    /// Report destination; empty means stdout.
    std::optional<std::string> output;
};

RunConfig config_from_json(const Json& j);
RunConfig load_config(const std::string& path);

/// Labels q1..qk for a freshly drawn register.
std::vector<QubitLabel> default_labels(std::size_t count);

}  // namespace loccsim
