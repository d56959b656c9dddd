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

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qent/error.hpp"

namespace qent {

inline constexpr std::size_t kUnbound = std::numeric_limits<std::size_t>::max();

/// A qubit reference. `index` is the ordinal in the program's declaration
/// list, or kUnbound when the name is not declared.
struct QubitId {
    std::string name;
    std::size_t index = kUnbound;

    friend bool operator==(const QubitId& a, const QubitId& b) {
        return a.name == b.name && a.index == b.index;
    }
};

enum class GateKind { H, T, X, Y, Z };

const char* gate_name(GateKind kind);

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

struct Skip {};
struct Seq {
    CommandPtr first;
    CommandPtr second;
};
struct If {
    QubitId cond;
    CommandPtr then_branch;
    CommandPtr else_branch;
};
struct While {
    QubitId cond;
    CommandPtr body;
};
struct Gate {
    GateKind kind;
    QubitId target;
};
struct CNot {
    QubitId control;
    QubitId target;
};

struct Command {
    std::variant<Skip, Seq, If, While, Gate, CNot> node;
};

bool operator==(const Command& a, const Command& b);

// Builders. Qubit indices are left unbound; Program::make binds them.
namespace ast {
CommandPtr skip();
CommandPtr seq(CommandPtr first, CommandPtr second);
/// Right-associated sequence of one or more commands.
CommandPtr seq(std::vector<CommandPtr> commands);
CommandPtr if_(std::string cond, CommandPtr then_branch, CommandPtr else_branch);
CommandPtr while_(std::string cond, CommandPtr body);
CommandPtr gate(GateKind kind, std::string target);
CommandPtr h(std::string target);
CommandPtr t(std::string target);
CommandPtr x(std::string target);
CommandPtr y(std::string target);
CommandPtr z(std::string target);
CommandPtr cnot(std::string control, std::string target);
}  // namespace ast

struct Program {
    std::vector<QubitId> qubits;
    CommandPtr body;

    /// Builds a program and binds every qubit reference in `body` to its
    /// declaration ordinal. Undeclared names stay kUnbound (see validate).
    static Program make(const std::vector<std::string>& qubit_names, CommandPtr body);

    std::size_t size() const { return qubits.size(); }
    std::vector<std::string> names() const;
    /// kUnbound if absent.
    std::size_t index_of(std::string_view name) const;

    friend bool operator==(const Program& a, const Program& b);
};

struct Diagnostic {
    enum class Kind { UndeclaredQubit, DuplicateQubit, SelfTargetCNot, EmptyProgram };
    Kind kind;
    std::string qubit;
    std::string message;
};

std::vector<Diagnostic> validate(const Program& p);

/// Parses `.qpl` source. Throws Error (Syntax, UndeclaredQubit,
/// DuplicateQubit, SelfTargetCNot).
Program parse(std::string_view source);

std::string unparse(const Program& p);
/// Single-line rendering of a command, used in trace tables.
std::string describe(const Command& c);

// Program points: the path of child selectors from the root command.
enum class Step { SeqFirst, SeqSecond, IfThen, IfElse, WhileBody };

struct ProgramPoint {
    std::vector<Step> path;

    friend auto operator<=>(const ProgramPoint&, const ProgramPoint&) = default;
    friend bool operator==(const ProgramPoint&, const ProgramPoint&) = default;
};

std::string to_string(const ProgramPoint& point);
/// Resolves a point, or returns nullptr when the path does not exist.
const Command* resolve(const Command& root, const ProgramPoint& point);

std::size_t count_nodes(const Command& c);
std::size_t count_measurements(const Command& c);

}  // namespace qent
