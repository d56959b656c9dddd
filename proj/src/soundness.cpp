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

#include "qent/soundness.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qent {

const char* to_string(WitnessKind kind) {
    switch (kind) {
    case WitnessKind::Witnessed: return "witnessed";
    case WitnessKind::Refuted: return "refuted_branch";
    case WitnessKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// beta

bool in_standard_basis(const CMatrix& rho, std::size_t q, double tol) {
    const std::size_t n = rho.qubits();
    if (q >= n) throw Error(ErrorCode::BadTarget, "qubit out of range");
    double upper = 0.0, lower = 0.0;  // |P^t rho P^f|^2 and |P^f rho P^t|^2
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            const std::size_t br = qubit_bit(r, q, n), bc = qubit_bit(c, q, n);
            if (br == 0 && bc == 1) upper += std::norm(rho(r, c));
            else if (br == 1 && bc == 0) lower += std::norm(rho(r, c));
        }
    return std::sqrt(upper) <= tol && std::sqrt(lower) <= tol;
}

bool in_diagonal_basis(const CMatrix& rho, std::size_t q, double tol) {
    return in_standard_basis(conjugate_gate(rho, gates::H(), {q}), q, tol);
}

BasisMap beta(const CMatrix& rho, double tol) {
    BasisMap out(rho.qubits());
    for (std::size_t q = 0; q < out.size(); ++q) {
        const bool s = in_standard_basis(rho, q, tol);
        const bool d = in_diagonal_basis(rho, q, tol);
        out[q] = s && d ? Flag::Bot : s ? Flag::S : d ? Flag::D : Flag::Top;
    }
    return out;
}

// ---------------------------------------------------------------------------
// separability witnesses

namespace {

std::size_t qubit_count(std::size_t len) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < len) ++n;
    return n;
}

std::size_t sub_index(std::size_t k, const std::vector<std::size_t>& block, std::size_t n) {
    std::size_t s = 0;
    for (std::size_t q : block) s = (s << 1) | qubit_bit(k, q, n);
    return s;
}

// Reduced state of a (normalised) branch on `block`, mixed slots replaced by I/2.
CMatrix reduced_state(const PureBranch& b, const std::vector<std::size_t>& block) {
    const std::size_t n = qubit_count(b.amplitudes.size());
    const std::size_t dim = std::size_t{1} << block.size();
    std::vector<bool> in_block(n, false);
    for (std::size_t q : block) in_block[q] = true;
    std::size_t rest_mask = 0;
    for (std::size_t q = 0; q < n; ++q)
        if (!in_block[q]) rest_mask |= std::size_t{1} << (n - 1 - q);

    // rho_B(i, j) = sum over rest assignments of psi[i, e] conj(psi[j, e]).
    std::vector<std::vector<std::pair<std::size_t, Complex>>> by_rest(std::size_t{1} << n);
    CMatrix rho(dim);
    for (std::size_t k = 0; k < b.amplitudes.size(); ++k) {
        if (b.amplitudes[k] == Complex{}) continue;
        by_rest[k & rest_mask].push_back({sub_index(k, block, n), b.amplitudes[k]});
    }
    for (const auto& entries : by_rest)
        for (const auto& [i, ai] : entries)
            for (const auto& [j, aj] : entries) rho(i, j) += ai * std::conj(aj);
    for (std::size_t local = 0; local < block.size(); ++local)
        if (b.is_mixed(block[local])) rho = (rho + conjugate_gate(rho, gates::X(), {local})) * 0.5;
    return rho;
}

double top_eigenvalue(const CMatrix& m) { return hermitian_eigenvalues(m).back(); }

}  // namespace

bool pure_block_separable(const PureBranch& psi, const Partition& pi, double tol) {
    const std::size_t n = qubit_count(psi.amplitudes.size());
    if (pi.size() != n)
        throw Error(ErrorCode::MismatchedQubitSets, "partition does not match the branch's qubits");
    double norm2 = 0.0;
    for (const auto& a : psi.amplitudes) norm2 += std::norm(a);
    for (const auto& block : pi.blocks()) {
        if (block.size() == n) continue;
        // Placeholder slots of mixed qubits are |0>, so the vector itself decides.
        PureBranch pure{psi.amplitudes, 1.0, "", 0};
        if (top_eigenvalue(reduced_state(pure, block)) < norm2 * (1.0 - tol)) return false;
    }
    return true;
}

SeparabilityVerdict witness_separability(const PureEnsemble& e, const Partition& pi, double tol) {
    SeparabilityVerdict v;
    const auto blocks = pi.blocks();
    for (std::size_t k = 0; k < e.branches.size(); ++k) {
        const PureBranch& b = e.branches[k];
        if (!pure_block_separable(b, pi, tol)) {
            v.kind = WitnessKind::Inconclusive;
            v.failing_branch = k;
            v.decomposition.clear();
            return v;
        }
        WitnessTerm term;
        term.weight = b.weight;
        term.blocks = blocks;
        for (const auto& block : blocks) term.factors.push_back(reduced_state(b, block));
        v.decomposition.push_back(std::move(term));
    }
    v.kind = WitnessKind::Witnessed;
    return v;
}

CMatrix reassemble(const std::vector<WitnessTerm>& terms, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    CMatrix out(dim);
    for (const auto& term : terms)
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) {
                Complex x = term.weight;
                for (std::size_t i = 0; i < term.blocks.size() && x != Complex{}; ++i)
                    x *= term.factors[i](sub_index(r, term.blocks[i], n), sub_index(c, term.blocks[i], n));
                out(r, c) += x;
            }
    return out;
}

// ---------------------------------------------------------------------------
// soundness relation

namespace {

constexpr double kReassemblyTolerance = 1e-7;

bool witnessed_and_consistent(const PureEnsemble& e, const Partition& pi, const CMatrix& rho,
                              double tol) {
    const auto v = witness_separability(e, pi, tol);
    return v.kind == WitnessKind::Witnessed &&
           approx_eq(reassemble(v.decomposition, pi.size()), rho, kReassemblyTolerance);
}

}  // namespace

bool in_sigma(const PureEnsemble& e, const AbstractElement& a, double tol) {
    if (a.size() != e.qubits.size())
        throw Error(ErrorCode::MismatchedQubitSets, "abstract element and state differ in size");
    const CMatrix rho = mixture(e).matrix;
    return map_leq(beta(rho, tol), a.basis) && witnessed_and_consistent(e, a.partition, rho, tol);
}

SoundnessReport check_sound(const Program& p, const PureEnsemble& init_concrete,
                            const AbstractElement& init_abstract, const LoopConfig& cfg, double tol,
                            const AbstractOptions& opts) {
    if (init_abstract.size() != p.size() || init_concrete.qubits.size() != p.size())
        throw Error(ErrorCode::MismatchedQubitSets, "inputs do not range over the program's qubits");
    if (!in_sigma(init_concrete, init_abstract, tol))
        throw Error(ErrorCode::PreconditionViolated,
                    "initial state is not approximated by the initial abstract element");

    SoundnessReport report;
    report.program = unparse(p);
    report.qubits = p.names();
    report.claimed = abstract_eval(p, init_abstract, opts);

    PureEnsemble out;
    try {
        out = eval_ensemble(p, init_concrete, cfg);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BranchExplosion) throw;
        report.verdict = Verdict::Inconclusive;
        report.note = e.what();
        return report;
    }
    report.residual = out.residual;
    report.nonterminating = out.nonterminating;
    report.branches = out.branches.size();
    report.output = mixture(out);
    report.beta = beta(report.output.matrix, tol);
    report.beta_ok = map_leq(report.beta, report.claimed.basis);

    const auto v = witness_separability(out, report.claimed.partition, tol);
    report.witness = v.kind;
    if (v.kind == WitnessKind::Inconclusive && out.branches.size() == 1 && out.branches[0].mixed == 0)
        report.witness = WitnessKind::Refuted;  // a pure state either factors or it does not
    if (v.kind == WitnessKind::Witnessed &&
        !approx_eq(reassemble(v.decomposition, p.size()), report.output.matrix, kReassemblyTolerance)) {
        report.witness = WitnessKind::Inconclusive;
        report.verdict = Verdict::Fail;
        report.note = "witness does not reassemble to the concrete state";
        return report;
    }

    if (!report.beta_ok || report.witness == WitnessKind::Refuted) {
        report.verdict = Verdict::Fail;
    } else if (report.witness == WitnessKind::Inconclusive) {
        report.verdict = Verdict::Inconclusive;
        report.note = "branch " + std::to_string(*v.failing_branch) + " does not factor";
    } else {
        report.verdict = Verdict::Pass;
    }
    return report;
}

bool sigma_convexity_check(const PureEnsemble& e1, const AbstractElement& a1, const PureEnsemble& e2,
                           const AbstractElement& a2, double tol) {
    if (e1.qubits != e2.qubits)
        throw Error(ErrorCode::MismatchedQubitSets, "ensembles range over different qubits");
    if (!in_sigma(e1, a1, tol) || !in_sigma(e2, a2, tol))
        throw Error(ErrorCode::PreconditionViolated, "input pair is not in the soundness relation");
    PureEnsemble sum = e1;
    sum.branches.insert(sum.branches.end(), e2.branches.begin(), e2.branches.end());
    if (trace(mixture(sum).matrix).real() > 1.0 + tol)
        throw Error(ErrorCode::PreconditionViolated, "combined trace exceeds 1");
    return in_sigma(sum, join(a1, a2), tol);
}

}  // namespace qent
