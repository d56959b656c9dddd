// Copyright 2026 The qent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "oracles.hpp"
#include "qent/linalg.hpp"

using namespace qent;

namespace {

bool close(const CMatrix& a, const CMatrix& b, double tol = 1e-12) { return oracle::frob(a - b) <= tol; }

}  // namespace

TEST_CASE("gate constants") {
    const CMatrix I = CMatrix::identity(2);
    for (const CMatrix* u : {&gates::H(), &gates::T(), &gates::X(), &gates::Y(), &gates::Z()})
        CHECK(close(*u * u->adjoint(), I));
    CHECK(close(gates::H() * gates::H(), I));
    // T^8 = I and T^dagger = T^7.
    CMatrix t7 = CMatrix::identity(2);
    for (int i = 0; i < 7; ++i) t7 = t7 * gates::T();
    CHECK(close(t7, gates::T().adjoint()));
    CHECK(close(t7 * gates::T(), I));
    CHECK(close(gates::CNot() * gates::CNot(), CMatrix::identity(4)));
    CHECK(close(gates::P_true() + gates::P_false(), I));
    CHECK(gates::P_true()(0, 0) == Complex(1.0));
    // XZ = -iY
    CHECK(close(gates::X() * gates::Z(), gates::Y() * Complex(0, -1)));
}

TEST_CASE("qubit ordering: first qubit is the most significant bit") {
    CHECK(qubit_bit(0b100, 0, 3) == 1);
    CHECK(qubit_bit(0b100, 2, 3) == 0);
    const CMatrix x0 = kron(gates::X(), gates::I2());
    CHECK(x0(0b10, 0b00) == Complex(1.0));
}

TEST_CASE("kron dimensions and capacity") {
    CHECK(kron(CMatrix::identity(2), CMatrix::identity(4)).dim() == 8);
    CHECK_THROWS_AS(kron(CMatrix::identity(1 << 6), CMatrix::identity(1 << 5)), Error);
    CHECK_THROWS_AS(CMatrix(3), Error);
}

TEST_CASE("conjugate_gate agrees with kron-lifted operators") {
    Rng rng(11);
    for (std::size_t n = 1; n <= 4; ++n) {
        const CMatrix rho = oracle::random_density(rng, n);
        for (std::size_t q = 0; q < n; ++q)
            for (const CMatrix* u : {&gates::H(), &gates::T(), &gates::Y()})
                CHECK(close(conjugate_gate(rho, *u, {q}), oracle::conj(oracle::lift1(*u, q, n), rho)));
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t t = 0; t < n; ++t) {
                if (c == t) continue;
                CHECK(close(conjugate_gate(rho, gates::CNot(), {c, t}), oracle::conj(oracle::lift_cnot(c, t, n), rho)));
            }
    }
}

TEST_CASE("conjugate_gate rejects bad targets") {
    const CMatrix rho = CMatrix::identity(4);
    CHECK_THROWS_AS(conjugate_gate(rho, gates::H(), {2}), Error);
    CHECK_THROWS_AS(conjugate_gate(rho, gates::CNot(), {1, 1}), Error);
    CHECK_THROWS_AS(conjugate_gate(rho, gates::CNot(), {0}), Error);
}

TEST_CASE("unitary conjugation keeps trace and hermiticity, and inverts") {
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        const CMatrix rho = oracle::random_density(rng, 3);
        const CMatrix out = conjugate_gate(rho, gates::T(), {1});
        CHECK(std::abs(trace(out) - 1.0) < 1e-12);
        CHECK(is_hermitian(out));
        CHECK(close(conjugate_gate(out, gates::T().adjoint(), {1}), rho));
    }
}

TEST_CASE("projection") {
    Rng rng(5);
    const CMatrix rho = oracle::random_density(rng, 3);
    for (std::size_t q = 0; q < 3; ++q) {
        const CMatrix t = project(rho, q, true), f = project(rho, q, false);
        CHECK(close(t, oracle::conj(oracle::lift1(gates::P_true(), q, 3), rho)));
        CHECK(std::abs(trace(t) + trace(f) - 1.0) < 1e-12);
    }
}

TEST_CASE("Loewner order") {
    CHECK(loewner_leq(CMatrix::zero(2), gates::P_true()));
    CHECK(loewner_leq(gates::P_true(), CMatrix::identity(2)));
    CHECK_FALSE(loewner_leq(gates::P_true(), gates::P_false()));
    CHECK(loewner_leq(gates::P_true(), gates::P_true()));
    CMatrix bad{{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(loewner_leq(bad, CMatrix::identity(2)), Error);
}

TEST_CASE("approx_eq, density predicate, eigenvalues") {
    CHECK(approx_eq(gates::P_true(), gates::P_true()));
    CHECK_FALSE(approx_eq(gates::P_true(), gates::P_false()));
    CHECK(is_density(gates::P_true()));
    CHECK(is_density(CMatrix::zero(2)));
    CHECK_FALSE(is_density(CMatrix::identity(2)));
    CHECK_FALSE(is_density(gates::Z()));
    const auto ev = hermitian_eigenvalues(gates::X());
    CHECK(ev.front() == doctest::Approx(-1.0));
    CHECK(ev.back() == doctest::Approx(1.0));
}

TEST_CASE("partial trace matches the summing oracle") {
    Rng rng(8);
    const CMatrix rho = oracle::random_density(rng, 3);
    for (std::size_t q = 0; q < 3; ++q) {
        const std::size_t keep[] = {q};
        CHECK(close(partial_trace(rho, keep), oracle::reduce_to(rho, q)));
    }
    const std::size_t all[] = {0, 1, 2};
    CHECK(close(partial_trace(rho, all), rho));
}

TEST_CASE("apply_gate matches conjugation of the pure state") {
    Rng rng(4);
    auto psi = oracle::random_vector(rng, 3);
    const CMatrix before = CMatrix::outer(psi);
    const std::size_t t[] = {2, 0};
    apply_gate(psi, gates::CNot(), t);
    CHECK(close(CMatrix::outer(psi), conjugate_gate(before, gates::CNot(), {2, 0})));
}
