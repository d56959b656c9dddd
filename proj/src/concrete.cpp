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

#include "qent/concrete.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <map>
#include <tuple>

namespace qent {

namespace {

constexpr double kDropWeight = 1e-12;

const CMatrix& gate_matrix(GateKind kind) {
    switch (kind) {
    case GateKind::H: return gates::H();
    case GateKind::T: return gates::T();
    case GateKind::X: return gates::X();
    case GateKind::Y: return gates::Y();
    case GateKind::Z: return gates::Z();
    }
    return gates::I2();
}

void check_capacity(std::size_t n, const LoopConfig& cfg) {
    if (n > cfg.max_qubits)
        throw Error(ErrorCode::CapacityExceeded,
                    std::to_string(n) + " qubits exceed the simulation capacity of " +
                        std::to_string(cfg.max_qubits));
}

}  // namespace

// ---------------------------------------------------------------------------
// density matrices

CMatrix eval(const Program& p, const Command& c, const CMatrix& rho, const LoopConfig& cfg,
             EvalResult& stats) {
    return std::visit(
        [&](const auto& n) -> CMatrix {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Skip>) {
                return rho;
            } else if constexpr (std::is_same_v<T, Seq>) {
                return eval(p, *n.second, eval(p, *n.first, rho, cfg, stats), cfg, stats);
            } else if constexpr (std::is_same_v<T, Gate>) {
                return conjugate_gate(rho, gate_matrix(n.kind), {n.target.index});
            } else if constexpr (std::is_same_v<T, CNot>) {
                return conjugate_gate(rho, gates::CNot(), {n.control.index, n.target.index});
            } else if constexpr (std::is_same_v<T, If>) {
                return eval(p, *n.then_branch, project(rho, n.cond.index, true), cfg, stats) +
                       eval(p, *n.else_branch, project(rho, n.cond.index, false), cfg, stats);
            } else {
                // Partial sums of sum_k F_false (body . F_true)^k.
                const std::size_t q = n.cond.index;
                CMatrix acc = project(rho, q, false);
                CMatrix pending = project(rho, q, true);
                std::size_t iter = 0;
                while (trace(pending).real() >= cfg.epsilon && iter < cfg.max_iterations) {
                    pending = eval(p, *n.body, pending, cfg, stats);
                    acc += project(pending, q, false);
                    pending = project(pending, q, true);
                    ++iter;
                }
                const double left = std::max(0.0, trace(pending).real());
                stats.residual += left;
                stats.loop_iterations += iter;
                if (left >= cfg.epsilon) stats.nonterminating = true;
                return acc;
            }
        },
        c.node);
}

EvalResult eval(const Program& p, const DensityState& rho, const LoopConfig& cfg) {
    check_capacity(p.size(), cfg);
    if (rho.matrix.dim() != (std::size_t{1} << p.size()))
        throw Error(ErrorCode::BadTarget, "state dimension does not match the program's qubits");
    EvalResult result;
    result.state.qubits = p.names();
    result.state.matrix = eval(p, *p.body, rho.matrix, cfg, result);
    return result;
}

// ---------------------------------------------------------------------------
// branch ensembles

namespace {

using Branches = std::vector<PureBranch>;

void apply1(PureBranch& b, const CMatrix& u, std::size_t q) {
    const std::size_t t[] = {q};
    apply_gate(b.amplitudes, u, t);
}

// Splits psi = u (x) phi across qubit q, both factors unit norm and phi's
// phase fixed. Fails when psi is entangled across q.
bool factor_out(const std::vector<Complex>& psi, std::size_t q, std::size_t n, std::array<Complex, 2>& u,
                std::vector<Complex>& phi) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    std::size_t best = 0;
    for (std::size_t k = 1; k < psi.size(); ++k)
        if (std::abs(psi[k]) > std::abs(psi[best])) best = k;
    const std::size_t rest = best & ~bit;
    const Complex pivot = psi[best];
    u = {psi[rest] / pivot, psi[rest | bit] / pivot};
    const std::size_t side = best & bit;
    phi.assign(psi.size() / 2, 0.0);
    std::size_t slot = 0;
    for (std::size_t k = 0; k < psi.size(); ++k)
        if (!(k & bit)) phi[slot++] = psi[k | side];
    slot = 0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        if (k & bit) continue;
        if (std::abs(psi[k] - u[0] * phi[slot]) > 1e-10 || std::abs(psi[k | bit] - u[1] * phi[slot]) > 1e-10)
            return false;
        ++slot;
    }
    const double nu = std::sqrt(std::norm(u[0]) + std::norm(u[1]));
    u[0] /= nu;
    u[1] /= nu;
    double nphi = 0.0;
    for (const auto& a : phi) nphi += std::norm(a);
    const Complex fix = std::conj(pivot) / std::abs(pivot) / std::sqrt(nphi);
    for (auto& a : phi) a *= fix;
    return true;
}

// Exact rewrite w|u><u| (x) P + w|v><v| (x) P = 2w I/2 (x) P for orthogonal u, v:
// turns such pairs back into one branch with q mixed. A qubit split in one
// basis can then be split again in the other one when a CNot needs it.
void remix_qubit(Branches& branches, std::size_t q, std::size_t n) {
    if (branches.size() < 2) return;
    struct Entry {
        std::size_t index;
        std::array<Complex, 2> u;
    };
    std::map<std::tuple<std::uint64_t, std::int64_t, std::vector<std::int64_t>>, std::vector<Entry>> groups;
    std::vector<std::vector<Complex>> rests(branches.size());
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const PureBranch& b = branches[i];
        std::array<Complex, 2> u;
        if (b.is_mixed(q) || !factor_out(b.amplitudes, q, n, u, rests[i])) continue;
        std::vector<std::int64_t> key;
        key.reserve(2 * rests[i].size());
        for (const auto& a : rests[i]) {
            key.push_back(std::llround(a.real() * 1e8));
            key.push_back(std::llround(a.imag() * 1e8));
        }
        groups[{b.mixed, std::llround(b.weight * 1e10), std::move(key)}].push_back({i, u});
    }
    std::vector<bool> gone(branches.size(), false);
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    for (auto& [key, entries] : groups) {
        for (std::size_t a = 0; a < entries.size(); ++a) {
            if (gone[entries[a].index]) continue;
            for (std::size_t b = a + 1; b < entries.size(); ++b) {
                if (gone[entries[b].index]) continue;
                const auto& x = entries[a].u;
                const auto& y = entries[b].u;
                if (std::abs(std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]) > 1e-9) continue;
                PureBranch& keep = branches[entries[a].index];
                const auto& phi = rests[entries[a].index];
                std::size_t slot = 0;
                for (std::size_t k = 0; k < keep.amplitudes.size(); ++k) {
                    if (k & bit) {
                        keep.amplitudes[k] = 0.0;
                    } else {
                        keep.amplitudes[k] = phi[slot++];
                    }
                }
                keep.weight += branches[entries[b].index].weight;
                keep.mixed |= std::uint64_t{1} << q;
                gone[entries[b].index] = true;
                break;
            }
        }
    }
    Branches kept;
    kept.reserve(branches.size());
    for (std::size_t i = 0; i < branches.size(); ++i)
        if (!gone[i]) kept.push_back(std::move(branches[i]));
    branches = std::move(kept);
}

class EnsembleEvaluator {
  public:
    EnsembleEvaluator(const Program& p, const LoopConfig& cfg, PureEnsemble& out)
        : p_(p), cfg_(cfg), out_(out) {}

    Branches run(const Command& c, Branches in) {
        return std::visit([&](const auto& n) { return step(n, std::move(in)); }, c.node);
    }

  private:
    Branches step(const Skip&, Branches in) { return in; }

    Branches step(const Seq& n, Branches in) { return run(*n.second, run(*n.first, std::move(in))); }

    Branches step(const Gate& n, Branches in) {
        const CMatrix& u = gate_matrix(n.kind);
        for (auto& b : in)
            if (!b.is_mixed(n.target.index)) apply1(b, u, n.target.index);
        return in;
    }

    Branches step(const CNot& n, Branches in) {
        const std::size_t c = n.control.index, t = n.target.index;
        const std::size_t targets[] = {c, t};
        remix_qubit(in, c, p_.size());
        remix_qubit(in, t, p_.size());
        Branches out;
        out.reserve(in.size());
        for (auto& b : in) {
            const bool mc = b.is_mixed(c), mt = b.is_mixed(t);
            if (mc && mt) {
                // CNot leaves I/2 (x) I/2 unchanged.
                out.push_back(std::move(b));
                continue;
            }
            if (mc || mt) {
                const std::size_t q = mc ? c : t;
                PureBranch zero = b, one = std::move(b);
                apply1(one, gates::X(), q);
                if (mt) {
                    // A mixed target is split in the diagonal basis.
                    apply1(zero, gates::H(), q);
                    apply1(one, gates::H(), q);
                }
                for (PureBranch* s : {&zero, &one}) {
                    s->mixed &= ~(std::uint64_t{1} << q);
                    s->weight *= 0.5;
                }
                zero.path += '0';
                one.path += '1';
                out.push_back(std::move(zero));
                out.push_back(std::move(one));
                continue;
            }
            out.push_back(std::move(b));
        }
        for (auto& b : out)
            if (!b.is_mixed(c) && !b.is_mixed(t)) apply_gate(b.amplitudes, gates::CNot(), targets);
        check_cap(out.size());
        return out;
    }

    // Splits every branch by measuring q; lighter-than-1e-12 parts are dropped.
    std::pair<Branches, Branches> measure(std::size_t q, Branches in) {
        Branches yes, no;
        const std::size_t n = p_.size();
        for (auto& b : in) {
            if (b.is_mixed(q)) {
                PureBranch one = b;
                apply1(one, gates::X(), q);
                for (PureBranch* s : {&b, &one}) {
                    s->mixed &= ~(std::uint64_t{1} << q);
                    s->weight *= 0.5;
                }
                b.path += 't';
                one.path += 'f';
                if (b.weight >= kDropWeight) yes.push_back(std::move(b));
                if (one.weight >= kDropWeight) no.push_back(std::move(one));
                continue;
            }
            PureBranch f = b;
            double nt = 0.0, nf = 0.0;
            for (std::size_t k = 0; k < b.amplitudes.size(); ++k) {
                if (qubit_bit(k, q, n) == 0) {
                    nt += std::norm(b.amplitudes[k]);
                    f.amplitudes[k] = 0.0;
                } else {
                    nf += std::norm(b.amplitudes[k]);
                    b.amplitudes[k] = 0.0;
                }
            }
            auto finish = [](PureBranch& s, double norm2, char tag, Branches& dst) {
                const double w = s.weight * norm2;
                if (w < kDropWeight) return;
                const double scale = 1.0 / std::sqrt(norm2);
                for (auto& a : s.amplitudes) a *= scale;
                s.weight = w;
                s.path += tag;
                dst.push_back(std::move(s));
            };
            finish(b, nt, 't', yes);
            finish(f, nf, 'f', no);
        }
        return {std::move(yes), std::move(no)};
    }

    Branches step(const If& n, Branches in) {
        auto [yes, no] = measure(n.cond.index, std::move(in));
        check_cap(yes.size() + no.size());
        Branches out = run(*n.then_branch, std::move(yes));
        Branches other = run(*n.else_branch, std::move(no));
        out.insert(out.end(), std::make_move_iterator(other.begin()),
                   std::make_move_iterator(other.end()));
        merge_duplicate_branches(out);
        check_cap(out.size());
        return out;
    }

    Branches step(const While& n, Branches in) {
        const std::size_t q = n.cond.index;
        auto [pending, out] = measure(q, std::move(in));
        std::size_t iter = 0;
        while (weight(pending) >= cfg_.epsilon && iter < cfg_.max_iterations) {
            auto [again, done] = measure(q, run(*n.body, std::move(pending)));
            out.insert(out.end(), std::make_move_iterator(done.begin()),
                       std::make_move_iterator(done.end()));
            merge_duplicate_branches(out);
            merge_duplicate_branches(again);
            check_cap(out.size() + again.size());
            pending = std::move(again);
            ++iter;
        }
        const double left = weight(pending);
        out_.residual += left;
        if (left >= cfg_.epsilon) out_.nonterminating = true;
        merge_duplicate_branches(out);
        return out;
    }

    static double weight(const Branches& bs) {
        double w = 0.0;
        for (const auto& b : bs) w += b.weight;
        return w;
    }

    void check_cap(std::size_t count) const {
        if (count > cfg_.branch_cap)
            throw Error(ErrorCode::BranchExplosion,
                        "branch count " + std::to_string(count) + " exceeds the cap of " +
                            std::to_string(cfg_.branch_cap));
    }

    const Program& p_;
    const LoopConfig& cfg_;
    PureEnsemble& out_;
};

}  // namespace

PureEnsemble eval_ensemble(const Program& p, const PureEnsemble& init, const LoopConfig& cfg) {
    check_capacity(p.size(), cfg);
    for (const auto& b : init.branches)
        if (b.amplitudes.size() != (std::size_t{1} << p.size()))
            throw Error(ErrorCode::BadTarget, "branch dimension does not match the program's qubits");
    PureEnsemble out;
    out.qubits = p.names();
    out.residual = init.residual;
    out.nonterminating = init.nonterminating;
    EnsembleEvaluator ev(p, cfg, out);
    out.branches = ev.run(*p.body, init.branches);
    return out;
}

CMatrix branch_density(const PureBranch& b) {
    CMatrix rho = CMatrix::outer(b.amplitudes, b.weight);
    const std::size_t n = rho.qubits();
    for (std::size_t q = 0; q < n; ++q) {
        if (!b.is_mixed(q)) continue;
        rho = (rho + conjugate_gate(rho, gates::X(), {q})) * 0.5;
    }
    return rho;
}

DensityState mixture(const PureEnsemble& e) {
    CMatrix rho(std::size_t{1} << e.qubits.size());
    for (const auto& b : e.branches) rho += branch_density(b);
    return {e.qubits, std::move(rho)};
}

PureEnsemble pure_ensemble(std::vector<std::string> qubits, std::vector<Complex> psi) {
    PureEnsemble e;
    e.qubits = std::move(qubits);
    e.branches.push_back({std::move(psi), 1.0, "", 0});
    return e;
}

PureEnsemble ensemble_from_density(const DensityState& rho, double tol) {
    const std::size_t d = rho.matrix.dim();
    Eigen::MatrixXcd m(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = rho.matrix(r, c);
    Eigen::MatrixXcd herm = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
    PureEnsemble e;
    e.qubits = rho.qubits;
    for (Eigen::Index k = static_cast<Eigen::Index>(d) - 1; k >= 0; --k) {
        const double w = solver.eigenvalues()(k);
        if (w <= tol) continue;
        std::vector<Complex> v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = solver.eigenvectors()(static_cast<Eigen::Index>(i), k);
        e.branches.push_back({std::move(v), w, "", 0});
    }
    return e;
}

void merge_duplicate_branches(std::vector<PureBranch>& branches) {
    // Key: mixed set plus amplitudes rounded after fixing the global phase.
    std::map<std::pair<std::uint64_t, std::vector<std::int64_t>>, std::size_t> seen;
    std::vector<PureBranch> kept;
    kept.reserve(branches.size());
    for (auto& b : branches) {
        if (b.weight < kDropWeight) continue;
        Complex phase{1.0, 0.0};
        for (const auto& a : b.amplitudes)
            if (std::abs(a) > 1e-6) {
                phase = std::conj(a) / std::abs(a);
                break;
            }
        std::vector<std::int64_t> key;
        key.reserve(2 * b.amplitudes.size());
        for (const auto& a : b.amplitudes) {
            const Complex x = a * phase;
            key.push_back(std::llround(x.real() * 1e9));
            key.push_back(std::llround(x.imag() * 1e9));
        }
        auto [it, fresh] = seen.try_emplace({b.mixed, std::move(key)}, kept.size());
        if (fresh) {
            kept.push_back(std::move(b));
        } else {
            kept[it->second].weight += b.weight;
        }
    }
    branches = std::move(kept);
}

}  // namespace qent
