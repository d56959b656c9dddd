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

#include <cstdint>
#include <string>
#include <vector>

#include "qent/linalg.hpp"
#include "qent/syntax.hpp"

namespace qent {

struct LoopConfig {
    /// A loop stops once the trace still inside it drops below epsilon.
    double epsilon = 1e-9;
    std::size_t max_iterations = 1000;
    /// Only used by eval_ensemble.
    std::size_t branch_cap = 4096;
    std::size_t max_qubits = kDefaultMaxQubits;
};

struct DensityState {
    std::vector<std::string> qubits;
    CMatrix matrix;
};

struct EvalResult {
    DensityState state;
    /// Trace left inside loops when they were cut off.
    double residual = 0.0;
    /// Some loop hit max_iterations with at least epsilon trace pending.
    bool nonterminating = false;
    std::size_t loop_iterations = 0;
};

/// One pure component of an ensemble.
///
/// Qubits whose bit is set in `mixed` are maximally mixed and uncorrelated in
/// this branch; their slot in `amplitudes` holds |0> as a placeholder. They
/// get split into a concrete basis the first time an operation needs it.
struct PureBranch {
    std::vector<Complex> amplitudes;
    double weight = 1.0;
    /// 't'/'f' per measurement outcome, '0'/'1' per basis split of a mixed qubit.
    std::string path;
    std::uint64_t mixed = 0;

    bool is_mixed(std::size_t q) const { return (mixed >> q) & 1u; }
};

struct PureEnsemble {
    std::vector<std::string> qubits;
    std::vector<PureBranch> branches;
    double residual = 0.0;
    bool nonterminating = false;
};

/// Density-matrix semantics. Throws CapacityExceeded.
EvalResult eval(const Program& p, const DensityState& rho, const LoopConfig& cfg = {});
/// Lower level form; `rho` must be over p.size() qubits.
CMatrix eval(const Program& p, const Command& c, const CMatrix& rho, const LoopConfig& cfg,
             EvalResult& stats);

/// Branch-ensemble semantics. Throws CapacityExceeded, BranchExplosion.
PureEnsemble eval_ensemble(const Program& p, const PureEnsemble& init, const LoopConfig& cfg = {});

/// Sum over branches of weight * |psi><psi| (mixed slots expanded to I/2).
DensityState mixture(const PureEnsemble& e);
CMatrix branch_density(const PureBranch& b);

/// Single-branch ensemble holding `psi` with weight 1.
PureEnsemble pure_ensemble(std::vector<std::string> qubits, std::vector<Complex> psi);
/// Spectral decomposition of a density matrix into an ensemble.
PureEnsemble ensemble_from_density(const DensityState& rho, double tol = 1e-12);

/// Drops branches lighter than 1e-12 and merges branches whose vectors
/// agree up to a global phase and share the same mixed set.
void merge_duplicate_branches(std::vector<PureBranch>& branches);

}  // namespace qent
