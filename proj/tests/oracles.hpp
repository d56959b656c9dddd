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

// Independent reference implementations used as test oracles. Everything here
// builds full 2^n x 2^n operators with kron and multiplies them out; nothing
// goes through conjugate_gate's index arithmetic or the ensemble evaluator.

#include <cmath>
#include <vector>

#include "qent/abstract.hpp"
#include "qent/concrete.hpp"
#include "qent/random.hpp"
#include "qent/syntax.hpp"

namespace oracle {

using qent::CMatrix;
using qent::Complex;

inline CMatrix kron_all(const std::vector<CMatrix>& factors) {
    CMatrix out = CMatrix::identity(1);
    for (const auto& f : factors) out = qent::kron(out, f, 16);
    return out;
}

/// u on qubit q of n, identity elsewhere.
inline CMatrix lift1(const CMatrix& u, std::size_t q, std::size_t n) {
    std::vector<CMatrix> f(n, qent::gates::I2());
    f[q] = u;
    return kron_all(f);
}

/// |0><0|_c (x) I + |1><1|_c (x) X_t.
inline CMatrix lift_cnot(std::size_t c, std::size_t t, std::size_t n) {
    std::vector<CMatrix> a(n, qent::gates::I2()), b(n, qent::gates::I2());
    a[c] = qent::gates::P_true();
    b[c] = qent::gates::P_false();
    b[t] = qent::gates::X();
    return kron_all(a) + kron_all(b);
}

inline CMatrix conj(const CMatrix& u, const CMatrix& rho) { return u * rho * u.adjoint(); }

inline const CMatrix& gate(qent::GateKind k) {
    switch (k) {
    case qent::GateKind::H: return qent::gates::H();
    case qent::GateKind::T: return qent::gates::T();
    case qent::GateKind::X: return qent::gates::X();
    case qent::GateKind::Y: return qent::gates::Y();
    case qent::GateKind::Z: return qent::gates::Z();
    }
    return qent::gates::I2();
}

/// Straight transcription of the density-matrix semantics with full operators.
/// Loops run exactly `iterations` unrollings.
inline CMatrix eval(const qent::Command& c, const CMatrix& rho, std::size_t n, std::size_t iterations = 64) {
    using namespace qent;
    if (std::holds_alternative<Skip>(c.node)) return rho;
    if (auto* s = std::get_if<Seq>(&c.node)) return eval(*s->second, eval(*s->first, rho, n, iterations), n, iterations);
    if (auto* g = std::get_if<Gate>(&c.node)) return conj(lift1(gate(g->kind), g->target.index, n), rho);
    if (auto* x = std::get_if<CNot>(&c.node)) return conj(lift_cnot(x->control.index, x->target.index, n), rho);
    if (auto* i = std::get_if<If>(&c.node)) {
        const CMatrix pt = lift1(gates::P_true(), i->cond.index, n), pf = lift1(gates::P_false(), i->cond.index, n);
        return eval(*i->then_branch, conj(pt, rho), n, iterations) + eval(*i->else_branch, conj(pf, rho), n, iterations);
    }
    const auto& w = std::get<While>(c.node);
    const CMatrix pt = lift1(gates::P_true(), w.cond.index, n), pf = lift1(gates::P_false(), w.cond.index, n);
    CMatrix out = conj(pf, rho);
    CMatrix pending = conj(pt, rho);
    for (std::size_t k = 0; k < iterations; ++k) {
        const CMatrix after = eval(*w.body, pending, n, iterations);
        out += conj(pf, after);
        pending = conj(pt, after);
    }
    return out;
}

inline double frob(const CMatrix& m) {
    double s = 0.0;
    for (const auto& x : m.data()) s += std::norm(x);
    return std::sqrt(s);
}

inline bool standard(const CMatrix& rho, std::size_t q, double tol) {
    const std::size_t n = rho.qubits();
    const CMatrix pt = lift1(qent::gates::P_true(), q, n), pf = lift1(qent::gates::P_false(), q, n);
    return frob(pt * rho * pf) <= tol && frob(pf * rho * pt) <= tol;
}

/// Diagonal test as "standard after H".
inline qent::BasisMap beta(const CMatrix& rho, double tol = 1e-9) {
    const std::size_t n = rho.qubits();
    qent::BasisMap out(n);
    for (std::size_t q = 0; q < n; ++q) {
        const bool s = standard(rho, q, tol);
        const bool d = standard(conj(lift1(qent::gates::H(), q, n), rho), q, tol);
        out[q] = s && d ? qent::Flag::Bot : s ? qent::Flag::S : d ? qent::Flag::D : qent::Flag::Top;
    }
    return out;
}

/// Reduced state by summing basis projections of the traced-out qubits.
inline CMatrix reduce_to(const CMatrix& rho, std::size_t q) {
    const std::size_t n = rho.qubits();
    CMatrix out(2);
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            const std::size_t rb = qent::qubit_bit(r, q, n), cb = qent::qubit_bit(c, q, n);
            const std::size_t mask = std::size_t{1} << (n - 1 - q);
            if ((r & ~mask) == (c & ~mask)) out(rb, cb) += rho(r, c);
        }
    return out;
}

inline Complex gaussian(qent::Rng& rng) {
    const double u1 = std::max(rng.unit(), 1e-300), u2 = rng.unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2)};
}

/// Random full-rank density matrix G G^dagger / tr.
inline CMatrix random_density(qent::Rng& rng, std::size_t n) {
    const std::size_t d = std::size_t{1} << n;
    CMatrix g(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) g(r, c) = gaussian(rng);
    CMatrix rho = g * g.adjoint();
    Complex tr = 0.0;
    for (std::size_t k = 0; k < d; ++k) tr += rho(k, k);
    return rho * (1.0 / tr.real());
}

inline std::vector<Complex> random_vector(qent::Rng& rng, std::size_t n) {
    std::vector<Complex> v(std::size_t{1} << n);
    double s = 0.0;
    for (auto& x : v) {
        x = gaussian(rng);
        s += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(s);
    return v;
}

/// All set partitions of {0..n-1} as label vectors (restricted growth strings).
inline std::vector<qent::Partition> all_partitions(std::size_t n) {
    std::vector<qent::Partition> out;
    std::vector<std::size_t> a(n, 0);
    auto rec = [&](auto&& self, std::size_t i, std::size_t m) -> void {
        if (i == n) {
            std::vector<std::size_t> labels(n);
            for (std::size_t k = 0; k < n; ++k) labels[k] = a[k];
            out.push_back(qent::Partition::from_labels(labels));
            return;
        }
        for (std::size_t v = 0; v <= m; ++v) {
            a[i] = v;
            self(self, i + 1, v == m ? m + 1 : m);
        }
    };
    if (n == 0) return {qent::Partition(0)};
    rec(rec, 0, 0);
    return out;
}

/// Refinement by definition: every block of a sits inside a block of b.
inline bool refines(const qent::Partition& a, const qent::Partition& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a.same_block(i, j) && !b.same_block(i, j)) return false;
    return true;
}

inline qent::BasisMap all_flags(std::size_t n, std::size_t code) {
    qent::BasisMap b(n);
    for (std::size_t q = 0; q < n; ++q) {
        b[q] = static_cast<qent::Flag>(code % 4);
        code /= 4;
    }
    return b;
}

}  // namespace oracle
