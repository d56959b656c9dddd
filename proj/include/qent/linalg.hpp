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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qent/error.hpp"

namespace qent {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kDefaultMaxQubits = 10;

/// Dense square complex matrix, row-major, dimension a power of two.
///
/// Qubit ordering: in an n-qubit matrix, basis index k carries the bit of
/// qubit j at position (k >> (n - 1 - j)) & 1, so the first declared qubit is
/// the most significant (leftmost tensor factor).
class CMatrix {
  public:
    CMatrix() : CMatrix(1) {}
    /// Zero matrix of the given dimension.
    explicit CMatrix(std::size_t dim);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t dim);
    static CMatrix zero(std::size_t dim) { return CMatrix(dim); }
    /// |v><v| scaled by weight.
    static CMatrix outer(std::span<const Complex> v, double weight = 1.0);

    std::size_t dim() const { return dim_; }
    std::size_t qubits() const;

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    std::span<const Complex> data() const { return data_; }

    CMatrix adjoint() const;
    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(Complex s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

namespace gates {
const CMatrix& I2();
const CMatrix& H();
const CMatrix& T();
const CMatrix& X();
const CMatrix& Y();
const CMatrix& Z();
const CMatrix& CNot();
const CMatrix& P_true();
const CMatrix& P_false();
}  // namespace gates

/// Bit of qubit `q` (ordinal) in basis index `k` of an n-qubit space.
inline std::size_t qubit_bit(std::size_t k, std::size_t q, std::size_t n) {
    return (k >> (n - 1 - q)) & 1u;
}

/// Kronecker product. Throws CapacityExceeded above 2^max_qubits.
CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_qubits = kDefaultMaxQubits);

/// E rho E^dagger where E lifts `u` onto `targets` (first target = most
/// significant qubit of u). Works by index arithmetic; E is never built.
CMatrix conjugate_gate(const CMatrix& rho, const CMatrix& u, std::span<const std::size_t> targets);
CMatrix conjugate_gate(const CMatrix& rho, const CMatrix& u, std::initializer_list<std::size_t> targets);

/// P_q rho P_q with P = P^true (outcome true) or P^false.
CMatrix project(const CMatrix& rho, std::size_t q, bool outcome);

Complex trace(const CMatrix& m);
double frobenius_norm(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol = kDefaultTolerance);
/// Ascending eigenvalues of the Hermitian part (m + m^dagger) / 2.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// a ⊑ b in the Löwner order: b - a positive semidefinite within tol.
/// Throws NotHermitian if either operand is not Hermitian.
bool loewner_leq(const CMatrix& a, const CMatrix& b, double tol = kDefaultTolerance);
bool is_density(const CMatrix& m, double tol = kDefaultTolerance);
bool approx_eq(const CMatrix& a, const CMatrix& b, double tol = kDefaultTolerance);

/// Unitary action on a state vector (same conventions as conjugate_gate).
void apply_gate(std::vector<Complex>& psi, const CMatrix& u, std::span<const std::size_t> targets);

/// Reduced density matrix of `rho` on `keep` (ordinals, in the given order).
CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> keep);

}  // namespace qent
