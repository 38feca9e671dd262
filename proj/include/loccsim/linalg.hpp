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
 * Complex dense linear algebra primitives: Kronecker products, unitarity
 * checks, Haar-random sampling, and the UnitaryMatrix wrapper used by the
 * rest of the library.
 */

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace loccsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

/// Tolerance for unitarity checks and for state-vector amplitude equality.
inline constexpr double kUnitaryTol = 1e-10;

/// Measurement branches with weight below this are treated as impossible.
inline constexpr double kBranchEps = 1e-12;

constexpr bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

/// Exact log2 of a power of two.
constexpr std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

/// Kronecker product a (x) b; the left factor supplies the high-order index.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
        a.rows() * b.rows(), a.cols() * b.cols());
    out = Eigen::kroneckerProduct(a.derived(), b.derived());
    return out;
}

/// True iff m is square and the max-norm of (m^dag m - I) is within tol.
template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = kUnitaryTol) {
    if (m.rows() == 0 || m.rows() != m.cols()) return false;
    using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Mat gram = m.adjoint() * m;
    gram -= Mat::Identity(m.rows(), m.cols());
    return gram.cwiseAbs().maxCoeff() <= tol;
}

/**
 * A dense complex matrix that is verified unitary at construction.
 *
 * Dimensions are restricted to powers of two (at least 2), matching the
 * qubit registers the library operates on. Construction throws
 * std::invalid_argument when the entries are not finite, not square, not a
 * power-of-two dimension, or not unitary within kUnitaryTol.
 */
class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(Matrix entries);

    Eigen::Index dim() const { return entries_.rows(); }
    std::size_t qubits() const { return log2_exact(static_cast<std::size_t>(entries_.rows())); }
    const Matrix& mat() const { return entries_; }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

    UnitaryMatrix adjoint() const { return UnitaryMatrix(entries_.adjoint()); }

    static UnitaryMatrix identity(Eigen::Index dim);

  private:
    Matrix entries_;
};

UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Entrywise max-norm distance between two matrices of equal shape.
double max_entry_diff(const Matrix& a, const Matrix& b);

/**
 * Haar-distributed random unitary of the given power-of-two dimension,
 * obtained as the QR factorization of a complex Ginibre matrix with the
 * R diagonal phases folded back into Q. Deterministic for a fixed seed.
 */
UnitaryMatrix haar_random_unitary(Eigen::Index dim, Rng& rng);
UnitaryMatrix haar_random_unitary(Eigen::Index dim, std::uint64_t seed);

/// Haar-random unit vector: iid complex Gaussian entries, normalized.
Vector haar_random_vector(Eigen::Index dim, Rng& rng);

}  // namespace loccsim
