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
 * Block-form operator families: diagonal, offdiagonal, and permutation block
 * unitaries U = sum_i |p(i)><i| (x) u_i, the basis-permutation operator R,
 * the control-U decomposition of diagonal blocks, and the named gates.
 */

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "loccsim/linalg.hpp"

namespace loccsim {

/// A bijection on the 2^n basis indices of an n-qubit register.
class Permutation {
  public:
    Permutation(std::size_t width, std::vector<std::size_t> map);

    static Permutation identity(std::size_t width);
    /// i -> i ^ mask; mask 1 is the offdiagonal block pattern.
    static Permutation xor_mask(std::size_t width, std::size_t mask);
    static Permutation random(std::size_t width, Rng& rng);

    std::size_t width() const { return width_; }
    std::size_t size() const { return map_.size(); }
    std::size_t operator()(std::size_t i) const { return map_[i]; }
    const std::vector<std::size_t>& map() const { return map_; }

    Permutation inverse() const;
    bool is_identity() const;

    bool operator==(const Permutation&) const = default;

  private:
    std::size_t width_;
    std::vector<std::size_t> map_;
};

enum class BlockKind { Diagonal, Offdiagonal, Permutation };

std::string_view to_string(BlockKind kind);
BlockKind block_kind_from_string(std::string_view name);

/**
 * U = sum_i |p(i)><i| (x) u_i with 2^N unitary blocks u_i of equal dimension
 * 2^M. Diagonal operations use the identity permutation and offdiagonal ones
 * the bit-flip i -> i ^ 1; the general permutation kind carries an arbitrary
 * bijection p.
 */
class BlockOperation {
  public:
    static BlockOperation diagonal(std::vector<UnitaryMatrix> blocks);
    static BlockOperation offdiagonal(std::vector<UnitaryMatrix> blocks);
    static BlockOperation permutation(Permutation perm, std::vector<UnitaryMatrix> blocks);
    static BlockOperation make(BlockKind kind, Permutation perm,
                               std::vector<UnitaryMatrix> blocks);

    BlockKind kind() const { return kind_; }
    /// N: number of control qubits.
    std::size_t control_width() const { return perm_.width(); }
    /// M: number of qubits each block acts on.
    std::size_t block_qubits() const { return blocks_.front().qubits(); }
    Eigen::Index block_dim() const { return blocks_.front().dim(); }
    std::size_t total_qubits() const { return control_width() + block_qubits(); }
    const std::vector<UnitaryMatrix>& blocks() const { return blocks_; }
    const Permutation& perm() const { return perm_; }

  private:
    BlockOperation(BlockKind kind, Permutation perm, std::vector<UnitaryMatrix> blocks);

    BlockKind kind_;
    Permutation perm_;
    std::vector<UnitaryMatrix> blocks_;
};

/// Dense 2^(N+M) unitary assembling sum_i |p(i)><i| (x) u_i.
UnitaryMatrix build_matrix(const BlockOperation& op);

/// R = sum_i |p(i)><i| as a 0/1 unitary on the control register.
UnitaryMatrix permutation_operator(const Permutation& p);

/// The XOR mask c with p(i) = i ^ c for all i, when one exists.
std::optional<std::size_t> xor_mask_of(const Permutation& p);

/// True iff R(p) factors as a tensor product of single-qubit I/X operations.
bool is_product_of_single_qubit(const Permutation& p);

/**
 * Factors a diagonal block operation with one control qubit into a local
 * unitary and a controlled unitary:
 *   U = (I (x) u0) . (|0><0| (x) I + |1><1| (x) u0^dag u1).
 * Returns {u0, the controlled factor}.
 */
std::pair<UnitaryMatrix, UnitaryMatrix> control_u_decomposition(const BlockOperation& op);

/// Standard gates by name: "X", "Z", "H" (normalized), "CNOT".
UnitaryMatrix named_gate(std::string_view name);

}  // namespace loccsim
