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

#include "loccsim/blockops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace loccsim {

Permutation::Permutation(std::size_t width, std::vector<std::size_t> map)
    : width_(width), map_(std::move(map)) {
    if (width_ == 0) {
        throw std::invalid_argument("Permutation: width must be at least 1");
    }
    const std::size_t n = std::size_t{1} << width_;
    if (map_.size() != n) {
        std::ostringstream msg;
        msg << "Permutation: width " << width_ << " requires " << n << " entries, got "
            << map_.size();
        throw std::invalid_argument(msg.str());
    }
    std::vector<bool> hit(n, false);
    for (const std::size_t v : map_) {
        if (v >= n || hit[v]) {
            throw std::invalid_argument("Permutation: map is not a bijection");
        }
        hit[v] = true;
    }
}

Permutation Permutation::identity(std::size_t width) {
    std::vector<std::size_t> map(std::size_t{1} << width);
    std::iota(map.begin(), map.end(), std::size_t{0});
    return Permutation(width, std::move(map));
}

Permutation Permutation::xor_mask(std::size_t width, std::size_t mask) {
    const std::size_t n = std::size_t{1} << width;
    if (mask >= n) {
        throw std::invalid_argument("Permutation: mask exceeds register width");
    }
    std::vector<std::size_t> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = i ^ mask;
    return Permutation(width, std::move(map));
}

Permutation Permutation::random(std::size_t width, Rng& rng) {
    std::vector<std::size_t> map(std::size_t{1} << width);
    std::iota(map.begin(), map.end(), std::size_t{0});
    std::shuffle(map.begin(), map.end(), rng);
    return Permutation(width, std::move(map));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(width_, std::move(inv));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < map_.size(); ++i) {
        if (map_[i] != i) return false;
    }
    return true;
}

std::string_view to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::Diagonal: return "diagonal";
        case BlockKind::Offdiagonal: return "offdiagonal";
        case BlockKind::Permutation: return "permutation";
    }
    return "?";
}

BlockKind block_kind_from_string(std::string_view name) {
    if (name == "diagonal") return BlockKind::Diagonal;
    if (name == "offdiagonal") return BlockKind::Offdiagonal;
    if (name == "permutation") return BlockKind::Permutation;
    throw std::invalid_argument("unknown block kind \"" + std::string(name) + "\"");
}

BlockOperation::BlockOperation(BlockKind kind, Permutation perm,
                               std::vector<UnitaryMatrix> blocks)
    : kind_(kind), perm_(std::move(perm)), blocks_(std::move(blocks)) {
    const std::size_t expected = std::size_t{1} << perm_.width();
    if (blocks_.size() != expected) {
        std::ostringstream msg;
        msg << "BlockOperation: control width " << perm_.width() << " requires " << expected
            << " blocks, got " << blocks_.size();
        throw std::invalid_argument(msg.str());
    }
    const Eigen::Index dim = blocks_.front().dim();
    for (std::size_t i = 1; i < blocks_.size(); ++i) {
        if (blocks_[i].dim() != dim) {
            std::ostringstream msg;
            msg << "BlockOperation: blocks[" << i << "] has dimension " << blocks_[i].dim()
                << ", expected " << dim;
            throw std::invalid_argument(msg.str());
        }
    }
}

BlockOperation BlockOperation::diagonal(std::vector<UnitaryMatrix> blocks) {
    if (blocks.empty() || !is_power_of_two(blocks.size()) || blocks.size() < 2) {
        throw std::invalid_argument("BlockOperation: block count must be a power of two >= 2");
    }
    const std::size_t width = log2_exact(blocks.size());
    return BlockOperation(BlockKind::Diagonal, Permutation::identity(width), std::move(blocks));
}

BlockOperation BlockOperation::offdiagonal(std::vector<UnitaryMatrix> blocks) {
    if (blocks.empty() || !is_power_of_two(blocks.size()) || blocks.size() < 2) {
        throw std::invalid_argument("BlockOperation: block count must be a power of two >= 2");
    }
    const std::size_t width = log2_exact(blocks.size());
    return BlockOperation(BlockKind::Offdiagonal, Permutation::xor_mask(width, 1),
                          std::move(blocks));
}

BlockOperation BlockOperation::permutation(Permutation perm, std::vector<UnitaryMatrix> blocks) {
    return BlockOperation(BlockKind::Permutation, std::move(perm), std::move(blocks));
}

BlockOperation BlockOperation::make(BlockKind kind, Permutation perm,
                                    std::vector<UnitaryMatrix> blocks) {
    switch (kind) {
        case BlockKind::Diagonal:
            if (!perm.is_identity()) {
                throw std::invalid_argument("diagonal operation requires the identity permutation");
            }
            return diagonal(std::move(blocks));
        case BlockKind::Offdiagonal:
            if (perm != Permutation::xor_mask(perm.width(), 1)) {
                throw std::invalid_argument(
                    "offdiagonal operation requires the bit-flip permutation");
            }
            return offdiagonal(std::move(blocks));
        case BlockKind::Permutation:
            return permutation(std::move(perm), std::move(blocks));
    }
    throw std::invalid_argument("BlockOperation: unknown kind");
}

UnitaryMatrix build_matrix(const BlockOperation& op) {
    const Eigen::Index d = op.block_dim();
    const Eigen::Index n_blocks = static_cast<Eigen::Index>(op.blocks().size());
    Matrix u = Matrix::Zero(n_blocks * d, n_blocks * d);
    for (Eigen::Index i = 0; i < n_blocks; ++i) {
        const auto row = static_cast<Eigen::Index>(op.perm()(static_cast<std::size_t>(i)));
        u.block(row * d, i * d, d, d) = op.blocks()[static_cast<std::size_t>(i)].mat();
    }
    return UnitaryMatrix(std::move(u));
}

UnitaryMatrix permutation_operator(const Permutation& p) {
    const auto n = static_cast<Eigen::Index>(p.size());
    Matrix r = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        r(static_cast<Eigen::Index>(p(static_cast<std::size_t>(i))), i) = 1.0;
    }
    return UnitaryMatrix(std::move(r));
}

std::optional<std::size_t> xor_mask_of(const Permutation& p) {
    const std::size_t mask = p(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p(i) != (i ^ mask)) return std::nullopt;
    }
    return mask;
}

bool is_product_of_single_qubit(const Permutation& p) {
    return xor_mask_of(p).has_value();
}

std::pair<UnitaryMatrix, UnitaryMatrix> control_u_decomposition(const BlockOperation& op) {
    if (op.kind() != BlockKind::Diagonal) {
        throw std::invalid_argument("control_u_decomposition: operation must be diagonal");
    }
    if (op.control_width() != 1) {
        throw std::invalid_argument("control_u_decomposition: control width must be 1");
    }
    const Matrix& u0 = op.blocks()[0].mat();
    const Matrix& u1 = op.blocks()[1].mat();
    const Eigen::Index d = op.block_dim();
    Matrix controlled = Matrix::Zero(2 * d, 2 * d);
    controlled.block(0, 0, d, d) = Matrix::Identity(d, d);
    controlled.block(d, d, d, d) = u0.adjoint() * u1;
    return {op.blocks()[0], UnitaryMatrix(std::move(controlled))};
}

UnitaryMatrix named_gate(std::string_view name) {
    if (name == "X") {
        Matrix m(2, 2);
        m << 0, 1,  //
            1, 0;
        return UnitaryMatrix(std::move(m));
    }
    if (name == "Z") {
        Matrix m(2, 2);
        m << 1, 0,  //
            0, -1;
        return UnitaryMatrix(std::move(m));
    }
    if (name == "H") {
        const double s = 1.0 / std::sqrt(2.0);
        Matrix m(2, 2);
        m << s, s,  //
            s, -s;
        return UnitaryMatrix(std::move(m));
    }
    if (name == "CNOT") {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
        return UnitaryMatrix(std::move(m));
    }
    throw std::invalid_argument("unknown gate \"" + std::string(name) + "\"");
}

}  // namespace loccsim
