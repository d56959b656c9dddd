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

#include "qent/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qent {

namespace {

bool is_power_of_two(std::size_t d) { return d != 0 && (d & (d - 1)) == 0; }

std::size_t log2_exact(std::size_t d) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < d) ++n;
    return n;
}

// Offsets of the 2^k sub-basis states of `targets` within an n-qubit index.
std::vector<std::size_t> target_offsets(std::span<const std::size_t> targets, std::size_t n) {
    const std::size_t k = targets.size();
    std::vector<std::size_t> off(std::size_t{1} << k, 0);
    for (std::size_t s = 0; s < off.size(); ++s)
        for (std::size_t i = 0; i < k; ++i)
            if ((s >> (k - 1 - i)) & 1u) off[s] |= std::size_t{1} << (n - 1 - targets[i]);
    return off;
}

std::vector<std::size_t> base_indices(std::span<const std::size_t> targets, std::size_t n) {
    std::size_t mask = 0;
    for (auto t : targets) mask |= std::size_t{1} << (n - 1 - t);
    std::vector<std::size_t> out;
    out.reserve((std::size_t{1} << n) >> targets.size());
    for (std::size_t b = 0; b < (std::size_t{1} << n); ++b)
        if ((b & mask) == 0) out.push_back(b);
    return out;
}

void check_targets(const CMatrix& u, std::span<const std::size_t> targets, std::size_t n) {
    if (u.dim() != (std::size_t{1} << targets.size()))
        throw Error(ErrorCode::BadTarget, "gate dimension does not match target count");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= n)
            throw Error(ErrorCode::BadTarget, "target qubit " + std::to_string(targets[i]) +
                                                  " out of range for " + std::to_string(n) +
                                                  " qubits");
        for (std::size_t j = 0; j < i; ++j)
            if (targets[i] == targets[j]) throw Error(ErrorCode::BadTarget, "repeated target qubit");
    }
}

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    Eigen::MatrixXcd e(m.dim(), m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) e(r, c) = m(r, c);
    return e;
}

}  // namespace

CMatrix::CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (!is_power_of_two(dim))
        throw Error(ErrorCode::BadTarget, "matrix dimension must be a power of two");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : CMatrix(rows.size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != dim_) throw Error(ErrorCode::BadTarget, "matrix must be square");
        std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
        ++r;
    }
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::outer(std::span<const Complex> v, double weight) {
    CMatrix m(v.size());
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (v[r] == Complex{}) continue;
        for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = weight * v[r] * std::conj(v[c]);
    }
    return m;
}

std::size_t CMatrix::qubits() const { return log2_exact(dim_); }

CMatrix CMatrix::adjoint() const {
    CMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (o.dim_ != dim_) throw Error(ErrorCode::BadTarget, "dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (o.dim_ != dim_) throw Error(ErrorCode::BadTarget, "dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::BadTarget, "dimension mismatch");
    const std::size_t d = a.dim();
    CMatrix out(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) continue;
            for (std::size_t c = 0; c < d; ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

namespace gates {

const CMatrix& I2() {
    static const CMatrix m = CMatrix::identity(2);
    return m;
}
const CMatrix& H() {
    static const double s = 1.0 / std::sqrt(2.0);
    static const CMatrix m{{s, s}, {s, -s}};
    return m;
}
const CMatrix& T() {
    static const CMatrix m{{1.0, 0.0}, {0.0, std::polar(1.0, M_PI / 4.0)}};
    return m;
}
const CMatrix& X() {
    static const CMatrix m{{0.0, 1.0}, {1.0, 0.0}};
    return m;
}
const CMatrix& Y() {
    static const CMatrix m{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}};
    return m;
}
const CMatrix& Z() {
    static const CMatrix m{{1.0, 0.0}, {0.0, -1.0}};
    return m;
}
const CMatrix& CNot() {
    static const CMatrix m{{1.0, 0.0, 0.0, 0.0},
                           {0.0, 1.0, 0.0, 0.0},
                           {0.0, 0.0, 0.0, 1.0},
                           {0.0, 0.0, 1.0, 0.0}};
    return m;
}
const CMatrix& P_true() {
    static const CMatrix m{{1.0, 0.0}, {0.0, 0.0}};
    return m;
}
const CMatrix& P_false() {
    static const CMatrix m{{0.0, 0.0}, {0.0, 1.0}};
    return m;
}

}  // namespace gates

CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_qubits) {
    const std::size_t n = a.qubits() + b.qubits();
    if (n > max_qubits)
        throw Error(ErrorCode::CapacityExceeded,
                    "kron result has " + std::to_string(n) + " qubits; capacity is " +
                        std::to_string(max_qubits));
    const std::size_t da = a.dim(), db = b.dim();
    CMatrix out(da * db);
    for (std::size_t r1 = 0; r1 < da; ++r1)
        for (std::size_t c1 = 0; c1 < da; ++c1) {
            const Complex x = a(r1, c1);
            if (x == Complex{}) continue;
            for (std::size_t r2 = 0; r2 < db; ++r2)
                for (std::size_t c2 = 0; c2 < db; ++c2) out(r1 * db + r2, c1 * db + c2) = x * b(r2, c2);
        }
    return out;
}

CMatrix conjugate_gate(const CMatrix& rho, const CMatrix& u, std::span<const std::size_t> targets) {
    const std::size_t n = rho.qubits();
    check_targets(u, targets, n);
    const auto off = target_offsets(targets, n);
    const auto bases = base_indices(targets, n);
    const std::size_t d = rho.dim(), m = off.size();

    // Left multiply by E, then right multiply by E^dagger.
    CMatrix left(d);
    std::vector<Complex> buf(m);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t b : bases) {
            for (std::size_t s = 0; s < m; ++s) buf[s] = rho(b + off[s], c);
            for (std::size_t s = 0; s < m; ++s) {
                Complex acc{};
                for (std::size_t t = 0; t < m; ++t) acc += u(s, t) * buf[t];
                left(b + off[s], c) = acc;
            }
        }
    CMatrix out(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t b : bases) {
            for (std::size_t s = 0; s < m; ++s) buf[s] = left(r, b + off[s]);
            for (std::size_t s = 0; s < m; ++s) {
                Complex acc{};
                for (std::size_t t = 0; t < m; ++t) acc += buf[t] * std::conj(u(s, t));
                out(r, b + off[s]) = acc;
            }
        }
    return out;
}

CMatrix conjugate_gate(const CMatrix& rho, const CMatrix& u, std::initializer_list<std::size_t> targets) {
    return conjugate_gate(rho, u, std::span<const std::size_t>(targets.begin(), targets.size()));
}

CMatrix project(const CMatrix& rho, std::size_t q, bool outcome) {
    const std::size_t n = rho.qubits();
    if (q >= n) throw Error(ErrorCode::BadTarget, "measured qubit out of range");
    const std::size_t want = outcome ? 0 : 1;
    CMatrix out(rho.dim());
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        if (qubit_bit(r, q, n) != want) continue;
        for (std::size_t c = 0; c < rho.dim(); ++c)
            if (qubit_bit(c, q, n) == want) out(r, c) = rho(r, c);
    }
    return out;
}

Complex trace(const CMatrix& m) {
    Complex t{};
    for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

double frobenius_norm(const CMatrix& m) {
    double s = 0.0;
    for (const auto& x : m.data()) s += std::norm(x);
    return std::sqrt(s);
}

bool is_hermitian(const CMatrix& m, double tol) {
    return frobenius_norm(m - m.adjoint()) <= tol;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    Eigen::MatrixXcd e = to_eigen(m);
    Eigen::MatrixXcd herm = (e + e.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

bool loewner_leq(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::BadTarget, "dimension mismatch");
    if (!is_hermitian(a, tol) || !is_hermitian(b, tol))
        throw Error(ErrorCode::NotHermitian, "Löwner comparison needs Hermitian operands");
    const auto ev = hermitian_eigenvalues(b - a);
    return ev.front() >= -tol;
}

bool is_density(const CMatrix& m, double tol) {
    if (!is_hermitian(m, tol)) return false;
    if (trace(m).real() > 1.0 + tol) return false;
    return hermitian_eigenvalues(m).front() >= -tol;
}

bool approx_eq(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.dim() != b.dim()) return false;
    return frobenius_norm(a - b) <= tol;
}

void apply_gate(std::vector<Complex>& psi, const CMatrix& u, std::span<const std::size_t> targets) {
    const std::size_t n = log2_exact(psi.size());
    if (!is_power_of_two(psi.size())) throw Error(ErrorCode::BadTarget, "vector length not 2^n");
    check_targets(u, targets, n);
    const auto off = target_offsets(targets, n);
    const std::size_t m = off.size();
    std::vector<Complex> buf(m);
    for (std::size_t b : base_indices(targets, n)) {
        for (std::size_t s = 0; s < m; ++s) buf[s] = psi[b + off[s]];
        for (std::size_t s = 0; s < m; ++s) {
            Complex acc{};
            for (std::size_t t = 0; t < m; ++t) acc += u(s, t) * buf[t];
            psi[b + off[s]] = acc;
        }
    }
}

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> keep) {
    const std::size_t n = rho.qubits();
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n; ++q)
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
    if (rest.size() + keep.size() != n) throw Error(ErrorCode::BadTarget, "bad partial trace qubits");
    const auto koff = target_offsets(keep, n);
    const auto roff = target_offsets(rest, n);
    CMatrix out(koff.size());
    for (std::size_t r = 0; r < koff.size(); ++r)
        for (std::size_t c = 0; c < koff.size(); ++c) {
            Complex acc{};
            for (std::size_t e : roff) acc += rho(koff[r] + e, koff[c] + e);
            out(r, c) = acc;
        }
    return out;
}

}  // namespace qent
