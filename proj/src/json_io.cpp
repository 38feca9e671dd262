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

#include "loccsim/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace loccsim {

namespace {

Json pair_of(double re, double im) { return Json::array({re, im}); }

bool is_nonneg_int(const Json& j) {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

Complex complex_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(field + " must be a [re, im] pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Vector amps_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) {
        throw ConfigError(field + " must be a non-empty array of [re, im] pairs");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i], field + "[" + std::to_string(i) + "]");
    }
    return v;
}

const Json& require_field(const Json& j, const std::string& key, const std::string& field) {
    if (!j.is_object()) {
        throw ConfigError(field + " must be an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(field + "." + key + " is missing");
    }
    return *it;
}

std::string string_field(const Json& j, const std::string& key, const std::string& field) {
    const Json& value = require_field(j, key, field);
    if (!value.is_string()) {
        throw ConfigError(field + "." + key + " must be a string");
    }
    return value.get<std::string>();
}

}  // namespace

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(pair_of(m(r, c).real(), m(r, c).imag()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const StateVector& s) {
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
        amps.push_back(pair_of(s.amps()[i].real(), s.amps()[i].imag()));
    }
    return Json{{"labels", s.labels()}, {"amps", std::move(amps)}};
}

Json to_json(const BlockOperation& op) {
    Json blocks = Json::array();
    for (const auto& block : op.blocks()) {
        blocks.push_back(to_json(block.mat()));
    }
    Json j{{"kind", std::string(to_string(op.kind()))},
           {"control_width", op.control_width()},
           {"blocks", std::move(blocks)}};
    if (op.kind() == BlockKind::Permutation) {
        j["perm"] = op.perm().map();
    }
    return j;
}

Json to_json(const ResourceLedger& ledger) {
    Json ebits = Json::array();
    for (const auto& [parties, count] : ledger.ebits) {
        ebits.push_back(Json{{"parties", Json::array({parties.first, parties.second})},
                             {"count", count}});
    }
    Json cbits = Json::array();
    for (const auto& [route, count] : ledger.cbits) {
        cbits.push_back(Json{{"from", route.first}, {"to", route.second}, {"count", count}});
    }
    return Json{{"ebits", std::move(ebits)},
                {"cbits", std::move(cbits)},
                {"total_ebits", ledger.total_ebits()},
                {"total_cbits", ledger.total_cbits()}};
}

Json to_json(const Event& event) {
    if (const auto* g = std::get_if<GateEvent>(&event)) {
        Json j{{"type", "gate"},
               {"party", g->party},
               {"gate", g->gate},
               {"targets", g->targets},
               {"step", g->step}};
        if (g->conditioned_on.has_value()) {
            j["conditioned_on"] = *g->conditioned_on;
        }
        return j;
    }
    if (const auto* m = std::get_if<MeasureEvent>(&event)) {
        return Json{{"type", "measure"}, {"party", m->party},       {"qubit", m->qubit},
                    {"bit", m->bit},     {"probability", m->probability}, {"step", m->step}};
    }
    const auto& msg = std::get<MessageEvent>(event);
    return Json{{"type", "message"}, {"from", msg.from}, {"to", msg.to},
                {"bit", msg.bit},    {"id", msg.id},     {"step", msg.step}};
}

Json trace_to_json(const ProtocolTrace& trace, bool include_step_states) {
    Json events = Json::array();
    for (const auto& event : trace.events) {
        events.push_back(to_json(event));
    }
    Json j{{"protocol", trace.protocol},
           {"bits", trace.branch_bits()},
           {"probability", trace.branch_probability()},
           {"events", std::move(events)},
           {"ledger", to_json(trace.ledger)},
           {"final_state", to_json(trace.final_state)}};
    if (include_step_states) {
        Json steps = Json::array();
        for (const auto& [id, state] : trace.step_states) {
            steps.push_back(Json{{"step", id}, {"state", to_json(state)}});
        }
        j["step_states"] = std::move(steps);
    }
    return j;
}

Matrix matrix_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) {
        throw ConfigError(field + " must be a non-empty array of rows");
    }
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        throw ConfigError(field + "[0] must be a non-empty array of [re, im] pairs");
    }
    const std::size_t cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_field = field + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols) {
            std::ostringstream msg;
            msg << row_field << " has " << j[r].size() << " entries, expected " << cols;
            throw ConfigError(msg.str());
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(j[r][c], row_field + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

StateVector state_from_json(const Json& j, const std::string& field) {
    const Json& labels_json = require_field(j, "labels", field);
    if (!labels_json.is_array() || labels_json.empty()) {
        throw ConfigError(field + ".labels must be a non-empty array of strings");
    }
    std::vector<QubitLabel> labels;
    labels.reserve(labels_json.size());
    for (std::size_t i = 0; i < labels_json.size(); ++i) {
        if (!labels_json[i].is_string()) {
            throw ConfigError(field + ".labels[" + std::to_string(i) + "] must be a string");
        }
        labels.push_back(labels_json[i].get<std::string>());
    }
    Vector amps = amps_from_json(require_field(j, "amps", field), field + ".amps");
    try {
        return StateVector(std::move(labels), std::move(amps));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

BlockOperation operation_from_json(const Json& j, const std::string& field) {
    const std::string kind_name = string_field(j, "kind", field);
    BlockKind kind;
    try {
        kind = block_kind_from_string(kind_name);
    } catch (const std::invalid_argument&) {
        throw ConfigError(field + ".kind \"" + kind_name + "\" is not a known block kind");
    }

    const Json& blocks_json = require_field(j, "blocks", field);
    if (!blocks_json.is_array() || blocks_json.empty()) {
        throw ConfigError(field + ".blocks must be a non-empty array of matrices");
    }
    if (!is_power_of_two(blocks_json.size())) {
        std::ostringstream msg;
        msg << field << ".blocks has " << blocks_json.size() << " entries, expected a power of 2";
        throw ConfigError(msg.str());
    }
    std::vector<UnitaryMatrix> blocks;
    blocks.reserve(blocks_json.size());
    for (std::size_t i = 0; i < blocks_json.size(); ++i) {
        const std::string block_field = field + ".blocks[" + std::to_string(i) + "]";
        Matrix m = matrix_from_json(blocks_json[i], block_field);
        try {
            blocks.emplace_back(std::move(m));
        } catch (const std::invalid_argument&) {
            throw ConfigError(block_field + " fails unitarity");
        }
    }
    const std::size_t width = log2_exact(blocks.size());

    if (const auto it = j.find("control_width"); it != j.end()) {
        if (!is_nonneg_int(*it) || it->get<std::size_t>() != width) {
            std::ostringstream msg;
            msg << field << ".control_width must equal " << width << " for " << blocks.size()
                << " blocks";
            throw ConfigError(msg.str());
        }
    }

    const bool has_perm = j.contains("perm");
    if (kind != BlockKind::Permutation && has_perm) {
        throw ConfigError(field + ".perm is only valid for kind \"permutation\"");
    }

    try {
        switch (kind) {
            case BlockKind::Diagonal:
                return BlockOperation::diagonal(std::move(blocks));
            case BlockKind::Offdiagonal:
                return BlockOperation::offdiagonal(std::move(blocks));
            case BlockKind::Permutation:
                break;
        }
        if (!has_perm) {
            throw ConfigError(field + ".perm is missing");
        }
        const Json& perm_json = j.at("perm");
        if (!perm_json.is_array() || perm_json.size() != blocks.size()) {
            std::ostringstream msg;
            msg << field << ".perm must be an array of " << blocks.size() << " indices";
            throw ConfigError(msg.str());
        }
        std::vector<std::size_t> map;
        map.reserve(perm_json.size());
        for (std::size_t i = 0; i < perm_json.size(); ++i) {
            if (!is_nonneg_int(perm_json[i])) {
                throw ConfigError(field + ".perm[" + std::to_string(i) +
                                  "] must be a nonnegative integer");
            }
            map.push_back(perm_json[i].get<std::size_t>());
        }
        return BlockOperation::permutation(Permutation(width, std::move(map)), std::move(blocks));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    const std::string protocol = string_field(j, "protocol", "config");
    static const std::set<std::string> known = {"bipartite-diagonal", "bipartite-offdiagonal",
                                                "bipartite-multiqubit", "three-party"};
    if (!known.contains(protocol)) {
        throw ConfigError("config.protocol \"" + protocol + "\" is not a known protocol");
    }

    BlockOperation operation = operation_from_json(require_field(j, "operation", "config"));

    RunConfig cfg{protocol, std::move(operation), std::nullopt, "enumerate", 1, std::nullopt};

    if (const auto it = j.find("seed"); it != j.end()) {
        if (!is_nonneg_int(*it)) {
            throw ConfigError("config.seed must be a nonnegative integer");
        }
        cfg.seed = it->get<std::uint64_t>();
    }

    if (const auto it = j.find("initial_state"); it != j.end()) {
        if (it->is_string()) {
            if (it->get<std::string>() != "random") {
                throw ConfigError(
                    "config.initial_state must be a state object or the string \"random\"");
            }
        } else {
            cfg.initial_state = state_from_json(*it, "config.initial_state");
            if (cfg.initial_state->num_qubits() != cfg.operation.total_qubits()) {
                std::ostringstream msg;
                msg << "config.initial_state has " << cfg.initial_state->num_qubits()
                    << " qubits, operation needs " << cfg.operation.total_qubits();
                throw ConfigError(msg.str());
            }
        }
    }

    if (const auto it = j.find("mode"); it != j.end()) {
        if (!it->is_string()) {
            throw ConfigError("config.mode must be a string");
        }
        cfg.mode = it->get<std::string>();
    }
    if (cfg.mode != "enumerate" && cfg.mode != "sample" && cfg.mode != "verify") {
        throw ConfigError("config.mode \"" + cfg.mode +
                          "\" must be one of enumerate, sample, verify");
    }

    if (const auto it = j.find("output"); it != j.end()) {
        if (!it->is_string()) {
            throw ConfigError("config.output must be a string path");
        }
        cfg.output = it->get<std::string>();
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file \"" + path + "\"");
    }
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ConfigError("config file \"" + path + "\" is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

std::vector<QubitLabel> default_labels(std::size_t count) {
    std::vector<QubitLabel> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        labels.push_back("q" + std::to_string(i + 1));
    }
    return labels;
}

}  // namespace loccsim
