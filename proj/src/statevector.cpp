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

#include "loccsim/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace loccsim {

namespace {

std::string join_labels(const std::vector<QubitLabel>& labels) {
    std::string out;
    for (const auto& l : labels) {
        if (!out.empty()) out += ",";
        out += l;
    }
    return out;
}

}  // namespace

StateVector::StateVector(std::vector<QubitLabel> labels, Vector amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
    if (labels_.empty()) {
        throw std::invalid_argument("StateVector: at least one qubit required");
    }
    std::set<QubitLabel> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) {
            throw std::invalid_argument("StateVector: duplicate label \"" + l + "\"");
        }
    }
    const auto expected = Eigen::Index{1} << labels_.size();
    if (amps_.size() != expected) {
        std::ostringstream msg;
        msg << "StateVector: " << labels_.size() << " qubits require " << expected
            << " amplitudes, got " << amps_.size();
        throw std::invalid_argument(msg.str());
    }
    if (!all_finite(amps_)) {
        throw std::invalid_argument("StateVector: amplitudes must be finite");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kUnitaryTol) {
        throw std::invalid_argument("StateVector: not normalized");
    }
}

StateVector StateVector::basis_state(std::vector<QubitLabel> labels, std::size_t index) {
    const auto dim = std::size_t{1} << labels.size();
    if (index >= dim) {
        throw std::invalid_argument("basis_state: index out of range");
    }
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim));
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(labels), std::move(amps));
}

StateVector StateVector::bell_pair(QubitLabel a, QubitLabel b) {
    Vector amps = Vector::Zero(4);
    amps(0) = amps(3) = 1.0 / std::sqrt(2.0);
    return StateVector({std::move(a), std::move(b)}, std::move(amps));
}

StateVector StateVector::haar_random(std::vector<QubitLabel> labels, Rng& rng) {
    const auto dim = Eigen::Index{1} << labels.size();
    return StateVector(std::move(labels), haar_random_vector(dim, rng));
}

bool StateVector::has_label(const QubitLabel& q) const {
    return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

std::size_t StateVector::position(const QubitLabel& q) const {
    const auto it = std::find(labels_.begin(), labels_.end(), q);
    if (it == labels_.end()) {
        throw std::invalid_argument("unknown qubit label \"" + q + "\"");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

StateVector StateVector::reordered(const std::vector<QubitLabel>& order) const {
    if (order.size() != labels_.size()) {
        throw std::invalid_argument("reordered: label sets differ ([" + join_labels(order) +
                                    "] vs [" + join_labels(labels_) + "])");
    }
    const std::size_t n = labels_.size();
    // shift[k] = bit shift in the old index of the label at new position k.
    std::vector<std::size_t> shift(n);
    for (std::size_t k = 0; k < n; ++k) {
        shift[k] = n - 1 - position(order[k]);
    }
    Vector out(amps_.size());
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
        std::size_t src = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t bit = (static_cast<std::size_t>(i) >> (n - 1 - k)) & 1U;
            src |= bit << shift[k];
        }
        out(i) = amps_(static_cast<Eigen::Index>(src));
    }
    return StateVector(order, std::move(out));
}

StateVector product_state(const std::vector<StateVector>& parts) {
    if (parts.empty()) {
        throw std::invalid_argument("product_state: no parts given");
    }
    std::vector<QubitLabel> labels;
    std::set<QubitLabel> seen;
    for (const auto& part : parts) {
        for (const auto& l : part.labels()) {
            if (!seen.insert(l).second) {
                throw std::invalid_argument("product_state: duplicate label \"" + l + "\"");
            }
            labels.push_back(l);
        }
    }
    Vector amps = parts.front().amps();
    for (std::size_t k = 1; k < parts.size(); ++k) {
        amps = kron(amps, parts[k].amps());
    }
    return StateVector(std::move(labels), std::move(amps));
}

StateVector apply_gate(const StateVector& s, const UnitaryMatrix& g,
                       const std::vector<QubitLabel>& targets) {
    const std::size_t n = s.num_qubits();
    const std::size_t t = targets.size();
    if (t == 0 || t > n) {
        throw std::invalid_argument("apply_gate: bad target count");
    }
    if (g.dim() != (Eigen::Index{1} << t)) {
        std::ostringstream msg;
        msg << "apply_gate: gate of dimension " << g.dim() << " does not fit " << t
            << " target qubit(s)";
        throw std::invalid_argument(msg.str());
    }

    // shift[j] = state-index bit shift of gate bit j (gate bit 0 = first target).
    std::vector<std::size_t> shift(t);
    std::set<QubitLabel> unique(targets.begin(), targets.end());
    if (unique.size() != t) {
        throw std::invalid_argument("apply_gate: repeated target label");
    }
    for (std::size_t j = 0; j < t; ++j) {
        shift[j] = n - 1 - s.position(targets[j]);
    }

    std::vector<std::size_t> rest_shifts;
    for (std::size_t k = 0; k < n; ++k) {
        if (std::find(shift.begin(), shift.end(), k) == shift.end()) {
            rest_shifts.push_back(k);
        }
    }

    const std::size_t gate_dim = std::size_t{1} << t;
    std::vector<std::size_t> offset(gate_dim);
    for (std::size_t c = 0; c < gate_dim; ++c) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < t; ++j) {
            idx |= ((c >> (t - 1 - j)) & 1U) << shift[j];
        }
        offset[c] = idx;
    }

    Vector out = Vector::Zero(s.dim());
    Vector block(static_cast<Eigen::Index>(gate_dim));
    const std::size_t rest_count = std::size_t{1} << rest_shifts.size();
    for (std::size_t rest = 0; rest < rest_count; ++rest) {
        std::size_t base = 0;
        for (std::size_t k = 0; k < rest_shifts.size(); ++k) {
            base |= ((rest >> k) & 1U) << rest_shifts[k];
        }
        for (std::size_t c = 0; c < gate_dim; ++c) {
            block(static_cast<Eigen::Index>(c)) =
                s.amps()(static_cast<Eigen::Index>(base | offset[c]));
        }
        const Vector rotated = g.mat() * block;
        for (std::size_t r = 0; r < gate_dim; ++r) {
            out(static_cast<Eigen::Index>(base | offset[r])) = rotated(static_cast<Eigen::Index>(r));
        }
    }
    return StateVector(s.labels(), std::move(out));
}

double branch_probability(const StateVector& s, const QubitLabel& q, int bit) {
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("branch_probability: bit must be 0 or 1");
    }
    const std::size_t n = s.num_qubits();
    const std::size_t shift = n - 1 - s.position(q);
    double p = 0.0;
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
        if (((static_cast<std::size_t>(i) >> shift) & 1U) == static_cast<std::size_t>(bit)) {
            p += std::norm(s.amps()(i));
        }
    }
    return p;
}

std::pair<StateVector, MeasurementOutcome> measure_branch(const StateVector& s,
                                                          const QubitLabel& q, int bit) {
    const std::size_t n = s.num_qubits();
    if (n < 2) {
        throw std::invalid_argument("measure_branch: cannot remove the last qubit");
    }
    const double p = branch_probability(s, q, bit);
    if (p < kBranchEps) {
        std::ostringstream msg;
        msg << "impossible branch: qubit " << q << " = " << bit << " has weight " << p;
        throw ImpossibleBranch(msg.str());
    }
    const std::size_t pos = s.position(q);
    const std::size_t shift = n - 1 - pos;
    const double scale = 1.0 / std::sqrt(p);
    const std::size_t low_mask = (std::size_t{1} << shift) - 1;

    Vector out(s.dim() / 2);
    for (Eigen::Index j = 0; j < out.size(); ++j) {
        const std::size_t low = static_cast<std::size_t>(j) & low_mask;
        const std::size_t high = static_cast<std::size_t>(j) >> shift;
        const std::size_t src =
            (high << (shift + 1)) | (static_cast<std::size_t>(bit) << shift) | low;
        out(j) = s.amps()(static_cast<Eigen::Index>(src)) * scale;
    }
    std::vector<QubitLabel> labels = s.labels();
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(pos));
    return {StateVector(std::move(labels), std::move(out)),
            MeasurementOutcome{q, bit, p}};
}

Complex inner_product(const StateVector& s, const StateVector& t) {
    const StateVector aligned = t.reordered(s.labels());
    return s.amps().dot(aligned.amps());
}

double fidelity(const StateVector& s, const StateVector& t) {
    return std::norm(inner_product(s, t));
}

double max_amplitude_diff(const StateVector& s, const StateVector& t) {
    const StateVector aligned = t.reordered(s.labels());
    return (s.amps() - aligned.amps()).cwiseAbs().maxCoeff();
}

bool approx_equal(const StateVector& s, const StateVector& t, double tol) {
    return max_amplitude_diff(s, t) <= tol;
}

}  // namespace loccsim
