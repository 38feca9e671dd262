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

#include "loccsim/linalg.hpp"

#include <cmath>
#include <sstream>

namespace loccsim {

UnitaryMatrix::UnitaryMatrix(Matrix entries) : entries_(std::move(entries)) {
    const auto rows = entries_.rows();
    if (rows != entries_.cols()) {
        throw std::invalid_argument("UnitaryMatrix: matrix must be square");
    }
    if (rows < 2 || !is_power_of_two(static_cast<std::size_t>(rows))) {
        std::ostringstream msg;
        msg << "UnitaryMatrix: dimension " << rows << " is not a power of two >= 2";
        throw std::invalid_argument(msg.str());
    }
    if (!all_finite(entries_)) {
        throw std::invalid_argument("UnitaryMatrix: entries must be finite");
    }
    if (!is_unitary(entries_, kUnitaryTol)) {
        throw std::invalid_argument("UnitaryMatrix: matrix fails unitarity");
    }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
    return UnitaryMatrix(Matrix::Identity(dim, dim));
}

UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return UnitaryMatrix(kron(a.mat(), b.mat()));
}

double max_entry_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_entry_diff: shape mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

UnitaryMatrix haar_random_unitary(Eigen::Index dim, Rng& rng) {
    if (dim < 2 || !is_power_of_two(static_cast<std::size_t>(dim))) {
        throw std::invalid_argument("haar_random_unitary: dim must be a power of two >= 2");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix ginibre(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            ginibre(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(ginibre);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fold the R diagonal phases into Q so the distribution is Haar rather
    // than merely uniform over QR outputs.
    for (Eigen::Index c = 0; c < dim; ++c) {
        const Complex d = r(c, c);
        const double mag = std::abs(d);
        q.col(c) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
    }
    return UnitaryMatrix(std::move(q));
}

UnitaryMatrix haar_random_unitary(Eigen::Index dim, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_unitary(dim, rng);
}

Vector haar_random_vector(Eigen::Index dim, Rng& rng) {
    if (dim < 1) {
        throw std::invalid_argument("haar_random_vector: dim must be positive");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = Complex(normal(rng), normal(rng));
    }
    v.normalize();
    return v;
}

}  // namespace loccsim
