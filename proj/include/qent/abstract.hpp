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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qent/syntax.hpp"

namespace qent {

/// Basis flag lattice: Bot <= S <= Top, Bot <= D <= Top.
enum class Flag : std::uint8_t { Bot, S, D, Top };

const char* to_string(Flag f);
/// Accepts s, d, top, bot (also "std", "diag", "⊤", "⊥").
Flag parse_flag(std::string_view text);

Flag flag_join(Flag a, Flag b);
Flag flag_meet(Flag a, Flag b);
bool flag_leq(Flag a, Flag b);

using BasisMap = std::vector<Flag>;

BasisMap map_join(const BasisMap& a, const BasisMap& b);
BasisMap map_meet(const BasisMap& a, const BasisMap& b);
bool map_leq(const BasisMap& a, const BasisMap& b);

/// Set partition of the qubit ordinals {0..n-1}.
///
/// Canonical form: every qubit is labelled by the least member of its block,
/// so two partitions are equal iff their label vectors are equal.
class Partition {
  public:
    Partition() = default;
    /// All singletons.
    explicit Partition(std::size_t n);
    /// Blocks may omit qubits; omitted qubits become singletons. Throws
    /// MismatchedQubitSets on out-of-range or overlapping blocks.
    static Partition from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks);
    /// One block containing everything.
    static Partition whole(std::size_t n);
    /// Qubits with equal labels share a block.
    static Partition from_labels(const std::vector<std::size_t>& labels);

    std::size_t size() const { return label_.size(); }
    std::size_t block_of(std::size_t q) const { return label_.at(q); }
    bool same_block(std::size_t a, std::size_t b) const { return label_.at(a) == label_.at(b); }
    /// Blocks sorted by least member, members ascending.
    std::vector<std::vector<std::size_t>> blocks() const;
    std::size_t block_count() const;

    friend bool operator==(const Partition&, const Partition&) = default;

  private:
    std::vector<std::size_t> label_;
};

bool partition_leq(const Partition& a, const Partition& b);
Partition partition_join(const Partition& a, const Partition& b);
Partition partition_meet(const Partition& a, const Partition& b);
/// Takes q out of its block into a singleton.
Partition remove(const Partition& p, std::size_t q);
/// Block {q1,q2}, every other qubit a singleton.
Partition pair_partition(std::size_t q1, std::size_t q2, std::size_t n);

struct AbstractElement {
    BasisMap basis;
    Partition partition;

    std::size_t size() const { return basis.size(); }
    /// (λq.⊥, singletons)
    static AbstractElement bottom(std::size_t n);
    /// (λq.⊤, {Q})
    static AbstractElement top(std::size_t n);

    friend bool operator==(const AbstractElement&, const AbstractElement&) = default;
};

bool leq(const AbstractElement& a, const AbstractElement& b);
AbstractElement join(const AbstractElement& a, const AbstractElement& b);
AbstractElement meet(const AbstractElement& a, const AbstractElement& b);

struct AbstractOptions {
    /// Use the textbook CNot rule (⊥,⊥) -> (s,d). The default keeps both
    /// flags at ⊥, which is also sound and keeps the transfer monotone.
    bool literal_bottom_cnot = false;
};

struct AnalysisDiagnostics {
    /// CNot inputs that satisfied more than one guard of the case split.
    std::size_t overlapping_cnot_guards = 0;
    std::size_t loop_iterations = 0;
};

AbstractElement abstract_eval(const Program& p, const AbstractElement& a,
                              const AbstractOptions& opts = {}, AnalysisDiagnostics* diag = nullptr);
AbstractElement abstract_eval(const Command& c, const AbstractElement& a,
                              const AbstractOptions& opts = {}, AnalysisDiagnostics* diag = nullptr);

struct TracePoint {
    AbstractElement entry;
    AbstractElement exit;
};

using AbstractTrace = std::map<ProgramPoint, TracePoint>;

/// Entry/exit element at every non-sequence command. Loop bodies record the
/// values at the loop's fixpoint.
AbstractTrace trace_eval(const Command& c, const AbstractElement& a, const AbstractOptions& opts = {});
/// The point whose exit value is the program's result: the last statement of
/// the top-level sequence.
ProgramPoint final_point(const Command& root);

// Text form: "q1:s q2:top | {q1,q2}{q3}".
std::string format_flags(const BasisMap& b, const std::vector<std::string>& names);
std::string format_blocks(const Partition& p, const std::vector<std::string>& names);
std::string format_element(const AbstractElement& a, const std::vector<std::string>& names);

/// Parses "q1:s q2:d" or "q1=s,q2=d". Unlisted qubits get `fallback`.
/// Throws MalformedAbstract.
BasisMap parse_flags(std::string_view text, const std::vector<std::string>& names, Flag fallback);
/// Parses "{q1,q4}{q2}"; omitted qubits are singletons. Throws MalformedAbstract.
Partition parse_blocks(std::string_view text, const std::vector<std::string>& names);
/// "flags | blocks" or flags alone.
AbstractElement parse_element(std::string_view text, const std::vector<std::string>& names);

}  // namespace qent
