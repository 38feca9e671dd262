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
 * Pure-state simulator over labeled qubit registers.
 *
 * Amplitudes are indexed by the basis string read in label order with the
 * first label as the most significant bit, so a state over labels [A, B]
 * stores the amplitude of |a b> at index a*2 + b. Every operation returns a
 * new value; states are immutable once constructed.
 */

#include <string>
#include <utility>
#include <vector>

#include "loccsim/linalg.hpp"

namespace loccsim {

using QubitLabel = std::string;

struct MeasurementOutcome {
    QubitLabel qubit;
    int bit = 0;
    double probability = 0.0;
};

/// Signals a requested measurement branch of (numerically) zero weight.
/// Distinct from std::invalid_argument so branch enumerators can skip it.
class ImpossibleBranch : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class StateVector {
  public:
    /// Throws std::invalid_argument on duplicate labels, a size mismatch,
    /// non-finite entries, or a norm away from 1 beyond kUnitaryTol.
    StateVector(std::vector<QubitLabel> labels, Vector amps);

    static StateVector basis_state(std::vector<QubitLabel> labels, std::size_t index);

    /// The maximally entangled pair (|00> + |11>)/sqrt(2) on [a, b].
    static StateVector bell_pair(QubitLabel a, QubitLabel b);

    /// Haar-random pure state (normalized complex Gaussian amplitudes).
    static StateVector haar_random(std::vector<QubitLabel> labels, Rng& rng);

    std::size_t num_qubits() const { return labels_.size(); }
    Eigen::Index dim() const { return amps_.size(); }
    const std::vector<QubitLabel>& labels() const { return labels_; }
    const Vector& amps() const { return amps_; }

    bool has_label(const QubitLabel& q) const;
    /// Position of q in the label list (0 = most significant bit).
    std::size_t position(const QubitLabel& q) const;

    /// Same state with amplitudes permuted to a new order of the same labels.
    StateVector reordered(const std::vector<QubitLabel>& order) const;

  private:
    std::vector<QubitLabel> labels_;
    Vector amps_;
};

/// Tensor product of disjointly labeled states, labels concatenated in order.
StateVector product_state(const std::vector<StateVector>& parts);

/**
 * Applies g to the listed target qubits, identity elsewhere. The first
 * target is the most significant bit of g's index convention. Requires
 * g.dim() == 2^targets.size() and distinct, present targets.
 */
StateVector apply_gate(const StateVector& s, const UnitaryMatrix& g,
                       const std::vector<QubitLabel>& targets);

/// Probability that measuring q in the computational basis yields bit.
double branch_probability(const StateVector& s, const QubitLabel& q, int bit);

/**
 * Projects q onto |bit>, renormalizes, and removes q from the register.
 * The returned outcome carries the pre-projection weight. Throws
 * ImpossibleBranch when that weight is below kBranchEps.
 */
std::pair<StateVector, MeasurementOutcome> measure_branch(const StateVector& s,
                                                          const QubitLabel& q, int bit);

/// <s|t> after aligning t to s's label order. Label sets must match.
Complex inner_product(const StateVector& s, const StateVector& t);

/// |<s|t>|^2 in [0, 1].
double fidelity(const StateVector& s, const StateVector& t);

/// Largest entrywise amplitude difference after label alignment. This is the
/// strict equality metric: the protocols reproduce amplitudes exactly, not
/// just up to a global phase.
double max_amplitude_diff(const StateVector& s, const StateVector& t);

bool approx_equal(const StateVector& s, const StateVector& t, double tol = kUnitaryTol);

}  // namespace loccsim
