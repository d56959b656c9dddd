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
#include <optional>
#include <string>
#include <vector>

#include "qent/abstract.hpp"
#include "qent/concrete.hpp"

namespace qent {

/// Per-qubit basis flags of a concrete state:
///   bot  q is in both the standard and the diagonal basis
///   s    standard only
///   d    diagonal only
///   top  neither
/// "Standard" means P^true_q rho P^false_q and its mirror vanish (Frobenius
/// norm <= tol); "diagonal" is the standard test on H_q rho H_q.
BasisMap beta(const CMatrix& rho, double tol = kDefaultTolerance);
bool in_standard_basis(const CMatrix& rho, std::size_t q, double tol = kDefaultTolerance);
bool in_diagonal_basis(const CMatrix& rho, std::size_t q, double tol = kDefaultTolerance);

/// True iff the pure branch factors across every block of `pi`: the reduced
/// state of each block has top eigenvalue >= 1 - tol. Mixed slots of the
/// branch are product factors by construction.
bool pure_block_separable(const PureBranch& psi, const Partition& pi, double tol = kDefaultTolerance);

/// One product term p * (x)_B rho_B of a separable decomposition.
struct WitnessTerm {
    double weight = 0.0;
    /// Block members (ordinals, ascending) and the block's reduced state.
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<CMatrix> factors;
};

enum class WitnessKind { Witnessed, Refuted, Inconclusive };
const char* to_string(WitnessKind kind);

struct SeparabilityVerdict {
    WitnessKind kind = WitnessKind::Inconclusive;
    /// Filled when Witnessed.
    std::vector<WitnessTerm> decomposition;
    /// Index of the first branch that does not factor, if any.
    std::optional<std::size_t> failing_branch;
};

/// Witnessed iff every branch factors across pi; the branches then are the
/// decomposition. Otherwise Inconclusive: a mixed state can be separable
/// through some other decomposition.
SeparabilityVerdict witness_separability(const PureEnsemble& e, const Partition& pi,
                                         double tol = kDefaultTolerance);
/// Sum of weight * (x)_B factor over the decomposition.
CMatrix reassemble(const std::vector<WitnessTerm>& terms, std::size_t n);

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v);

struct SoundnessReport {
    Verdict verdict = Verdict::Inconclusive;
    bool beta_ok = false;
    BasisMap beta;
    AbstractElement claimed;
    WitnessKind witness = WitnessKind::Inconclusive;
    double residual = 0.0;
    bool nonterminating = false;
    std::size_t branches = 0;
    std::uint64_t seed = 0;
    std::string program;
    std::vector<std::string> qubits;
    DensityState output;
    /// Set when evaluation aborted (e.g. branch explosion).
    std::string note;
};

/// Checks that the concrete result is approximated by the abstract result.
/// Throws PreconditionViolated when the inputs are not themselves related.
SoundnessReport check_sound(const Program& p, const PureEnsemble& init_concrete,
                            const AbstractElement& init_abstract, const LoopConfig& cfg = {},
                            double tol = kDefaultTolerance, const AbstractOptions& opts = {});

/// (mixture(e), a) is in the soundness relation, witnessed by e's branches.
bool in_sigma(const PureEnsemble& e, const AbstractElement& a, double tol = kDefaultTolerance);

/// Verifies (rho1 + rho2, a1 ∨ a2) is in the relation by concatenating the
/// two witnesses. Throws PreconditionViolated if an input pair is unrelated
/// or the combined trace exceeds 1.
bool sigma_convexity_check(const PureEnsemble& e1, const AbstractElement& a1, const PureEnsemble& e2,
                           const AbstractElement& a2, double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// random programs

struct GeneratorConfig {
    std::size_t min_qubits = 2;
    std::size_t max_qubits = 4;
    std::size_t max_depth = 8;
    /// Upper bound on if/while nodes per program.
    std::size_t max_measurements = 8;
    // Relative weights of Skip, Seq, If, While, H, T, Pauli, CNot.
    double w_skip = 1, w_seq = 6, w_if = 1.5, w_while = 0.6, w_h = 3, w_t = 2, w_pauli = 1.5,
           w_cnot = 4;
};

/// Deterministic in (seed, config). The result validates. Every loop body ends
/// with H on the loop qubit so the loop can exit.
Program generate_program(std::uint64_t seed, const GeneratorConfig& config = {});

}  // namespace qent
