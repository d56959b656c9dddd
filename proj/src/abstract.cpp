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

#include "qent/abstract.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace qent {

const char* to_string(Flag f) {
    switch (f) {
    case Flag::Bot: return "bot";
    case Flag::S: return "s";
    case Flag::D: return "d";
    case Flag::Top: return "top";
    }
    return "?";
}

Flag parse_flag(std::string_view text) {
    if (text == "s" || text == "std") return Flag::S;
    if (text == "d" || text == "diag") return Flag::D;
    if (text == "top" || text == "⊤") return Flag::Top;
    if (text == "bot" || text == "⊥") return Flag::Bot;
    throw Error(ErrorCode::MalformedAbstract, "unknown basis flag '" + std::string(text) + "'");
}

Flag flag_join(Flag a, Flag b) {
    if (a == b || b == Flag::Bot) return a;
    if (a == Flag::Bot) return b;
    return Flag::Top;
}

Flag flag_meet(Flag a, Flag b) {
    if (a == b || b == Flag::Top) return a;
    if (a == Flag::Top) return b;
    return Flag::Bot;
}

bool flag_leq(Flag a, Flag b) { return a == b || a == Flag::Bot || b == Flag::Top; }

namespace {

void require_same_size(std::size_t a, std::size_t b) {
    if (a != b)
        throw Error(ErrorCode::MismatchedQubitSets, "operands range over " + std::to_string(a) +
                                                        " and " + std::to_string(b) + " qubits");
}

void require_member(std::size_t q, std::size_t n) {
    if (q >= n)
        throw Error(ErrorCode::MismatchedQubitSets,
                    "qubit " + std::to_string(q) + " is outside a " + std::to_string(n) + "-qubit set");
}

// Weighted quick-union with path halving.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    std::vector<std::size_t> roots() {
        std::vector<std::size_t> out(parent_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = find(i);
        return out;
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace

BasisMap map_join(const BasisMap& a, const BasisMap& b) {
    require_same_size(a.size(), b.size());
    BasisMap out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = flag_join(a[i], b[i]);
    return out;
}

BasisMap map_meet(const BasisMap& a, const BasisMap& b) {
    require_same_size(a.size(), b.size());
    BasisMap out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = flag_meet(a[i], b[i]);
    return out;
}

bool map_leq(const BasisMap& a, const BasisMap& b) {
    require_same_size(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!flag_leq(a[i], b[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// partitions

Partition::Partition(std::size_t n) : label_(n) {
    std::iota(label_.begin(), label_.end(), std::size_t{0});
}

Partition Partition::from_labels(const std::vector<std::size_t>& labels) {
    Partition p(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (labels[j] == labels[i]) {
                p.label_[i] = j;
                break;
            }
    return p;
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks) {
    std::vector<std::size_t> labels(n);
    std::iota(labels.begin(), labels.end(), std::size_t{0});
    std::vector<bool> used(n, false);
    for (const auto& block : blocks) {
        if (block.empty()) throw Error(ErrorCode::MismatchedQubitSets, "empty block");
        for (std::size_t q : block) {
            require_member(q, n);
            if (used[q])
                throw Error(ErrorCode::MismatchedQubitSets,
                            "qubit " + std::to_string(q) + " appears in two blocks");
            used[q] = true;
            labels[q] = n + block.front();
        }
    }
    return from_labels(labels);
}

Partition Partition::whole(std::size_t n) { return from_labels(std::vector<std::size_t>(n, 0)); }

std::vector<std::vector<std::size_t>> Partition::blocks() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> slot(label_.size(), kUnbound);
    for (std::size_t q = 0; q < label_.size(); ++q) {
        const std::size_t l = label_[q];
        if (slot[l] == kUnbound) {
            slot[l] = out.size();
            out.emplace_back();
        }
        out[slot[l]].push_back(q);
    }
    return out;
}

std::size_t Partition::block_count() const {
    std::size_t count = 0;
    for (std::size_t q = 0; q < label_.size(); ++q) count += label_[q] == q;
    return count;
}

bool partition_leq(const Partition& a, const Partition& b) {
    require_same_size(a.size(), b.size());
    // Every block of a fits in a block of b iff a's block-mates are b's block-mates.
    for (std::size_t q = 0; q < a.size(); ++q)
        if (!b.same_block(q, a.block_of(q))) return false;
    return true;
}

Partition partition_join(const Partition& a, const Partition& b) {
    require_same_size(a.size(), b.size());
    UnionFind uf(a.size());
    for (std::size_t q = 0; q < a.size(); ++q) {
        uf.unite(q, a.block_of(q));
        uf.unite(q, b.block_of(q));
    }
    return Partition::from_labels(uf.roots());
}

Partition partition_meet(const Partition& a, const Partition& b) {
    require_same_size(a.size(), b.size());
    std::vector<std::size_t> labels(a.size());
    for (std::size_t q = 0; q < a.size(); ++q) labels[q] = a.block_of(q) * a.size() + b.block_of(q);
    return Partition::from_labels(labels);
}

Partition remove(const Partition& p, std::size_t q) {
    require_member(q, p.size());
    std::vector<std::size_t> labels(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) labels[i] = p.block_of(i);
    labels[q] = p.size();
    return Partition::from_labels(labels);
}

Partition pair_partition(std::size_t q1, std::size_t q2, std::size_t n) {
    require_member(q1, n);
    require_member(q2, n);
    if (q1 == q2) throw Error(ErrorCode::MismatchedQubitSets, "pair partition needs two qubits");
    return Partition::from_blocks(n, {{q1, q2}});
}

// ---------------------------------------------------------------------------
// abstract elements

AbstractElement AbstractElement::bottom(std::size_t n) { return {BasisMap(n, Flag::Bot), Partition(n)}; }

AbstractElement AbstractElement::top(std::size_t n) {
    return {BasisMap(n, Flag::Top), Partition::whole(n)};
}

bool leq(const AbstractElement& a, const AbstractElement& b) {
    return map_leq(a.basis, b.basis) && partition_leq(a.partition, b.partition);
}

AbstractElement join(const AbstractElement& a, const AbstractElement& b) {
    return {map_join(a.basis, b.basis), partition_join(a.partition, b.partition)};
}

AbstractElement meet(const AbstractElement& a, const AbstractElement& b) {
    return {map_meet(a.basis, b.basis), partition_meet(a.partition, b.partition)};
}

namespace {

class Analyzer {
  public:
    Analyzer(const AbstractOptions& opts, AnalysisDiagnostics* diag, AbstractTrace* trace)
        : opts_(opts), diag_(diag), trace_(trace) {}

    AbstractElement run(const Command& c, const AbstractElement& a, ProgramPoint& at) {
        AbstractElement out = std::visit([&](const auto& n) { return step(n, a, at); }, c.node);
        if (trace_ && !std::holds_alternative<Seq>(c.node)) (*trace_)[at] = {a, out};
        return out;
    }

  private:
    AbstractElement step(const Skip&, const AbstractElement& a, ProgramPoint&) { return a; }

    AbstractElement step(const Seq& n, const AbstractElement& a, ProgramPoint& at) {
        AbstractElement mid = descend(*n.first, a, at, Step::SeqFirst);
        return descend(*n.second, mid, at, Step::SeqSecond);
    }

    AbstractElement step(const Gate& n, const AbstractElement& a, ProgramPoint&) {
        const std::size_t q = checked(n.target, a);
        AbstractElement out = a;
        Flag& f = out.basis[q];
        switch (n.kind) {
        case GateKind::H:
            if (f == Flag::S) f = Flag::D;
            else if (f == Flag::D) f = Flag::S;
            break;
        case GateKind::T:
            if (f == Flag::D) f = Flag::Top;
            else if (f == Flag::Bot) f = Flag::S;
            break;
        default:  // Paulis keep both bases.
            break;
        }
        return out;
    }

    AbstractElement step(const CNot& n, const AbstractElement& a, ProgramPoint&) {
        const std::size_t c = checked(n.control, a), t = checked(n.target, a);
        const Flag fc = a.basis[c], ft = a.basis[t];
        const bool control_std = fc == Flag::S || ft == Flag::D;
        const bool control_bot = fc == Flag::Bot && ft != Flag::Bot;
        const bool target_bot = fc != Flag::Bot && ft == Flag::Bot;
        if (diag_ && control_std && (control_bot || target_bot)) ++diag_->overlapping_cnot_guards;

        AbstractElement out = a;
        if (control_std) return out;
        if (control_bot) {
            out.basis[c] = Flag::S;
        } else if (target_bot) {
            out.basis[t] = Flag::D;
        } else if (fc == Flag::Bot && ft == Flag::Bot) {
            if (opts_.literal_bottom_cnot) {
                out.basis[c] = Flag::S;
                out.basis[t] = Flag::D;
            }
        } else {
            out.basis[c] = Flag::Top;
            out.basis[t] = Flag::Top;
            out.partition = partition_join(out.partition, pair_partition(c, t, a.size()));
        }
        return out;
    }

    static AbstractElement measured(const AbstractElement& a, std::size_t q) {
        AbstractElement out = a;
        out.basis[q] = Flag::S;
        out.partition = remove(a.partition, q);
        return out;
    }

    AbstractElement step(const If& n, const AbstractElement& a, ProgramPoint& at) {
        const AbstractElement in = measured(a, checked(n.cond, a));
        return join(descend(*n.then_branch, in, at, Step::IfThen),
                    descend(*n.else_branch, in, at, Step::IfElse));
    }

    AbstractElement step(const While& n, const AbstractElement& a, ProgramPoint& at) {
        const std::size_t q = checked(n.cond, a);
        // Increasing Kleene iteration: r = F(a), r <- r ∨ F(body(r)).
        Analyzer quiet(opts_, diag_, nullptr);
        AbstractElement r = measured(a, q);
        for (;;) {
            ProgramPoint scratch;
            AbstractElement next = join(r, measured(quiet.run(*n.body, r, scratch), q));
            if (diag_) ++diag_->loop_iterations;
            if (next == r) break;
            r = std::move(next);
        }
        if (trace_) descend(*n.body, r, at, Step::WhileBody);
        return r;
    }

    AbstractElement descend(const Command& c, const AbstractElement& a, ProgramPoint& at, Step s) {
        at.path.push_back(s);
        AbstractElement out = run(c, a, at);
        at.path.pop_back();
        return out;
    }

    static std::size_t checked(const QubitId& q, const AbstractElement& a) {
        if (q.index >= a.size())
            throw Error(ErrorCode::MismatchedQubitSets,
                        "qubit '" + q.name + "' is not part of the abstract element");
        return q.index;
    }

    const AbstractOptions& opts_;
    AnalysisDiagnostics* diag_;
    AbstractTrace* trace_;
};

}  // namespace

AbstractElement abstract_eval(const Command& c, const AbstractElement& a, const AbstractOptions& opts,
                              AnalysisDiagnostics* diag) {
    require_same_size(a.basis.size(), a.partition.size());
    ProgramPoint root;
    return Analyzer(opts, diag, nullptr).run(c, a, root);
}

AbstractElement abstract_eval(const Program& p, const AbstractElement& a, const AbstractOptions& opts,
                              AnalysisDiagnostics* diag) {
    require_same_size(p.size(), a.size());
    return abstract_eval(*p.body, a, opts, diag);
}

AbstractTrace trace_eval(const Command& c, const AbstractElement& a, const AbstractOptions& opts) {
    require_same_size(a.basis.size(), a.partition.size());
    AbstractTrace trace;
    ProgramPoint root;
    Analyzer(opts, nullptr, &trace).run(c, a, root);
    return trace;
}

ProgramPoint final_point(const Command& root) {
    ProgramPoint at;
    const Command* cur = &root;
    while (const auto* seq = std::get_if<Seq>(&cur->node)) {
        at.path.push_back(Step::SeqSecond);
        cur = seq->second.get();
    }
    return at;
}

// ---------------------------------------------------------------------------
// text form

std::string format_flags(const BasisMap& b, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) out += ' ';
        out += names.at(i) + ":" + to_string(b[i]);
    }
    return out;
}

std::string format_blocks(const Partition& p, const std::vector<std::string>& names) {
    std::string out;
    for (const auto& block : p.blocks()) {
        out += '{';
        for (std::size_t i = 0; i < block.size(); ++i) out += (i ? "," : "") + names.at(block[i]);
        out += '}';
    }
    return out;
}

std::string format_element(const AbstractElement& a, const std::vector<std::string>& names) {
    return format_flags(a.basis, names) + " | " + format_blocks(a.partition, names);
}

namespace {

std::size_t lookup(std::string_view name, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    throw Error(ErrorCode::MalformedAbstract, "unknown qubit '" + std::string(name) + "'");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

BasisMap parse_flags(std::string_view text, const std::vector<std::string>& names, Flag fallback) {
    BasisMap out(names.size(), fallback);
    std::vector<bool> given(names.size(), false);
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find_first_of(" ,\t\n", pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view item = text.substr(pos, end - pos);
        pos = end + 1;
        if (item.empty()) continue;
        const std::size_t sep = item.find_first_of(":=");
        if (sep == std::string_view::npos)
            throw Error(ErrorCode::MalformedAbstract,
                        "expected qubit:flag, got '" + std::string(item) + "'");
        const std::size_t q = lookup(item.substr(0, sep), names);
        if (given[q])
            throw Error(ErrorCode::MalformedAbstract, "qubit '" + names[q] + "' flagged twice");
        given[q] = true;
        out[q] = parse_flag(item.substr(sep + 1));
    }
    return out;
}

Partition parse_blocks(std::string_view text, const std::vector<std::string>& names) {
    std::vector<std::vector<std::size_t>> blocks;
    std::string_view rest = trim(text);
    while (!rest.empty()) {
        if (rest.front() != '{')
            throw Error(ErrorCode::MalformedAbstract, "expected '{' in block list");
        const std::size_t close = rest.find('}');
        if (close == std::string_view::npos)
            throw Error(ErrorCode::MalformedAbstract, "unterminated block");
        std::string_view inner = rest.substr(1, close - 1);
        std::vector<std::size_t> block;
        std::size_t pos = 0;
        while (pos <= inner.size()) {
            std::size_t comma = inner.find(',', pos);
            if (comma == std::string_view::npos) comma = inner.size();
            std::string_view name = trim(inner.substr(pos, comma - pos));
            if (name.empty()) throw Error(ErrorCode::MalformedAbstract, "empty qubit name in block");
            block.push_back(lookup(name, names));
            pos = comma + 1;
        }
        blocks.push_back(std::move(block));
        rest = trim(rest.substr(close + 1));
    }
    try {
        return Partition::from_blocks(names.size(), blocks);
    } catch (const Error& e) {
        throw Error(ErrorCode::MalformedAbstract, e.what());
    }
}

AbstractElement parse_element(std::string_view text, const std::vector<std::string>& names) {
    const std::size_t bar = text.find('|');
    std::string_view flags = bar == std::string_view::npos ? text : text.substr(0, bar);
    std::string_view blocks = bar == std::string_view::npos ? std::string_view{} : text.substr(bar + 1);
    return {parse_flags(flags, names, Flag::S), parse_blocks(blocks, names)};
}

}  // namespace qent
