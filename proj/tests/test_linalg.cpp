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

#include <doctest.h>

using namespace loccsim;

namespace {

// CNOT assembled from its truth table: the target bit flips iff the control
// bit (the high bit) is set.
Matrix cnot_truth_table() {
    Matrix m = Matrix::Zero(4, 4);
    for (std::size_t in = 0; in < 4; ++in) {
        const std::size_t out = in ^ (in >> 1);
        m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) = 1.0;
    }
    return m;
}

Matrix pauli_x() {
    Matrix x(2, 2);
    x << 0, 1,  //
        1, 0;
    return x;
}

}  // namespace

TEST_CASE("kron of identities is the larger identity") {
    const Matrix i2 = Matrix::Identity(2, 2);
    CHECK(max_entry_diff(kron(i2, i2), Matrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("kron assembles CNOT from projector terms") {
    Matrix p0 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    Matrix p1 = Matrix::Zero(2, 2);
    p1(1, 1) = 1.0;
    const Matrix u = kron(p0, Matrix::Identity(2, 2)) + kron(p1, pauli_x());
    CHECK(max_entry_diff(u, cnot_truth_table()) == 0.0);
}

TEST_CASE("Z tensor Z fixes the maximally entangled pair") {
    Matrix z(2, 2);
    z << 1, 0,  //
        0, -1;
    Vector bell(4);
    const double s = 1.0 / std::sqrt(2.0);
    bell << s, 0, 0, s;
    const Vector mapped = kron(z, z) * bell;
    CHECK((mapped - bell).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("is_unitary accepts the normalized Hadamard and rejects the unnormalized one") {
    Matrix h(2, 2);
    h << 1, 1,  //
        1, -1;
    CHECK(is_unitary(Matrix(h / std::sqrt(2.0)), kUnitaryTol));
    // Unnormalized: h.adjoint() * h = 2I, off by 1 entrywise.
    CHECK_FALSE(is_unitary(h, kUnitaryTol));
}

TEST_CASE("is_unitary rejects non-square and empty matrices") {
    CHECK_FALSE(is_unitary(Matrix::Identity(2, 3), kUnitaryTol));
    CHECK_FALSE(is_unitary(Matrix(), kUnitaryTol));
}

TEST_CASE("Haar samples are unitary with unit column norms") {
    Rng rng(911);
    for (int i = 0; i < 100; ++i) {
        const Eigen::Index dim = i % 2 == 0 ? 2 : 4;
        const UnitaryMatrix u = haar_random_unitary(dim, rng);
        CHECK(is_unitary(u.mat(), kUnitaryTol));
        for (Eigen::Index c = 0; c < dim; ++c) {
            CHECK(std::abs(u.mat().col(c).norm() - 1.0) < kUnitaryTol);
        }
    }
}

TEST_CASE("Haar sampling is deterministic for a fixed seed") {
    const UnitaryMatrix a = haar_random_unitary(2, 7);
    const UnitaryMatrix b = haar_random_unitary(2, 7);
    CHECK(max_entry_diff(a.mat(), b.mat()) == 0.0);
    const UnitaryMatrix c = haar_random_unitary(2, 8);
    CHECK(max_entry_diff(a.mat(), c.mat()) > 0.0);
}

TEST_CASE("haar_random_vector is normalized and seed-stable") {
    Rng rng(5);
    const Vector v = haar_random_vector(8, rng);
    CHECK(std::abs(v.norm() - 1.0) < kUnitaryTol);
    Rng again(5);
    CHECK((haar_random_vector(8, again) - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("UnitaryMatrix validates its input") {
    CHECK_THROWS_AS(UnitaryMatrix(Matrix::Identity(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(UnitaryMatrix(Matrix::Identity(3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(UnitaryMatrix(Matrix::Identity(1, 1)), std::invalid_argument);
    Matrix shear(2, 2);
    shear << 1, 1,  //
        0, 1;
    CHECK_THROWS_AS(UnitaryMatrix{shear}, std::invalid_argument);
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(UnitaryMatrix{bad}, std::invalid_argument);
}

TEST_CASE("UnitaryMatrix exposes dimension, qubit count, and adjoint") {
    const UnitaryMatrix u = haar_random_unitary(4, 21);
    CHECK(u.dim() == 4);
    CHECK(u.qubits() == 2);
    CHECK(max_entry_diff(u.adjoint().mat() * u.mat(), Matrix::Identity(4, 4)) < kUnitaryTol);
    CHECK(max_entry_diff(UnitaryMatrix::identity(8).mat(), Matrix::Identity(8, 8)) == 0.0);
}

TEST_CASE("kron of unitaries multiplies dimensions") {
    const UnitaryMatrix u = kron(haar_random_unitary(2, 1), haar_random_unitary(4, 2));
    CHECK(u.dim() == 8);
    CHECK(u.qubits() == 3);
    CHECK(is_unitary(u.mat(), kUnitaryTol));
}

TEST_CASE("power-of-two helpers") {
    CHECK(is_power_of_two(1));
    CHECK(is_power_of_two(8));
    CHECK_FALSE(is_power_of_two(0));
    CHECK_FALSE(is_power_of_two(6));
    CHECK(log2_exact(1) == 0);
    CHECK(log2_exact(16) == 4);
}
