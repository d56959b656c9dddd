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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qent/abstract.hpp"
#include "qent/concrete.hpp"

namespace qent {

class Rng;

enum class Preset { True, False, Plus, Minus, Mixed, TState };

const char* to_string(Preset p);
/// One-qubit density matrix of a preset. tstate is T H P^true H T^dagger.
CMatrix preset_density(Preset p);

/// Initial concrete state: one preset per qubit or Bell pairs, or a JSON file.
struct InitSpec {
    std::vector<std::optional<Preset>> presets;
    std::vector<std::pair<std::size_t, std::size_t>> bell_pairs;
    std::optional<std::string> file;
};

/// All qubits P^true.
InitSpec default_init(std::size_t n);
/// "q1=plus,q2=true,bell(q3,q4)"; a value ending in ".json" names a state
/// file. Every qubit must be covered exactly once. Throws MalformedInit.
InitSpec parse_init(std::string_view text, const std::vector<std::string>& names);
std::string format_init(const InitSpec& spec, const std::vector<std::string>& names);

PureEnsemble init_ensemble(const InitSpec& spec, const std::vector<std::string>& names);

/// Abstract element matching an init: flags from beta of each preset (or
/// Bell pair), Bell pairs as blocks. For file inits, beta of the state and
/// either singletons (if the file's ensemble witnesses them) or one block.
AbstractElement derive_abstract(const InitSpec& spec, const std::vector<std::string>& names,
                                double tol = kDefaultTolerance);

/// Random product of presets, with an occasional Bell pair.
InitSpec random_init(Rng& rng, std::size_t n, double bell_chance = 0.25);

/// Reads {"qubits": [...], "matrix": [[[re,im],...],...]} or
/// {"qubits": [...], "branches": [{"weight": w, "amplitudes": [[re,im],...]}]}.
PureEnsemble load_state_file(const std::string& path, const std::vector<std::string>& names);

}  // namespace qent
