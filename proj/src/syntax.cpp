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

#include "qent/syntax.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>

namespace qent {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::UndeclaredQubit: return "UndeclaredQubit";
    case ErrorCode::DuplicateQubit: return "DuplicateQubit";
    case ErrorCode::SelfTargetCNot: return "SelfTargetCNot";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::BadTarget: return "BadTarget";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::MismatchedQubitSets: return "MismatchedQubitSets";
    case ErrorCode::BranchExplosion: return "BranchExplosion";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::MalformedAbstract: return "MalformedAbstract";
    case ErrorCode::MalformedInit: return "MalformedInit";
    case ErrorCode::Io: return "IoError";
    }
    return "Error";
}

const char* gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::H: return "H";
    case GateKind::T: return "T";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    }
    return "?";
}

bool operator==(const Command& a, const Command& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& lhs) -> bool {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, Skip>) {
                return true;
            } else if constexpr (std::is_same_v<T, Seq>) {
                return *lhs.first == *rhs.first && *lhs.second == *rhs.second;
            } else if constexpr (std::is_same_v<T, If>) {
                return lhs.cond == rhs.cond && *lhs.then_branch == *rhs.then_branch &&
                       *lhs.else_branch == *rhs.else_branch;
            } else if constexpr (std::is_same_v<T, While>) {
                return lhs.cond == rhs.cond && *lhs.body == *rhs.body;
            } else if constexpr (std::is_same_v<T, Gate>) {
                return lhs.kind == rhs.kind && lhs.target == rhs.target;
            } else {
                return lhs.control == rhs.control && lhs.target == rhs.target;
            }
        },
        a.node);
}

bool operator==(const Program& a, const Program& b) {
    return a.qubits == b.qubits && *a.body == *b.body;
}

namespace ast {

namespace {
CommandPtr make(auto node) { return std::make_shared<const Command>(Command{std::move(node)}); }
}  // namespace

CommandPtr skip() { return make(Skip{}); }
CommandPtr seq(CommandPtr first, CommandPtr second) {
    return make(Seq{std::move(first), std::move(second)});
}
CommandPtr seq(std::vector<CommandPtr> commands) {
    if (commands.empty()) return skip();
    CommandPtr acc = commands.back();
    for (auto it = commands.rbegin() + 1; it != commands.rend(); ++it) acc = seq(*it, acc);
    return acc;
}
CommandPtr if_(std::string cond, CommandPtr then_branch, CommandPtr else_branch) {
    return make(If{{std::move(cond)}, std::move(then_branch), std::move(else_branch)});
}
CommandPtr while_(std::string cond, CommandPtr body) {
    return make(While{{std::move(cond)}, std::move(body)});
}
CommandPtr gate(GateKind kind, std::string target) { return make(Gate{kind, {std::move(target)}}); }
CommandPtr h(std::string target) { return gate(GateKind::H, std::move(target)); }
CommandPtr t(std::string target) { return gate(GateKind::T, std::move(target)); }
CommandPtr x(std::string target) { return gate(GateKind::X, std::move(target)); }
CommandPtr y(std::string target) { return gate(GateKind::Y, std::move(target)); }
CommandPtr z(std::string target) { return gate(GateKind::Z, std::move(target)); }
CommandPtr cnot(std::string control, std::string target) {
    return make(CNot{{std::move(control)}, {std::move(target)}});
}

}  // namespace ast

namespace {

using IndexMap = std::unordered_map<std::string, std::size_t>;

QubitId bind(const QubitId& q, const IndexMap& map) {
    auto it = map.find(q.name);
    return {q.name, it == map.end() ? kUnbound : it->second};
}

CommandPtr bind(const CommandPtr& c, const IndexMap& map) {
    return std::visit(
        [&](const auto& n) -> CommandPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Skip>) {
                return c;
            } else if constexpr (std::is_same_v<T, Seq>) {
                return ast::seq(bind(n.first, map), bind(n.second, map));
            } else if constexpr (std::is_same_v<T, If>) {
                return std::make_shared<const Command>(Command{
                    If{bind(n.cond, map), bind(n.then_branch, map), bind(n.else_branch, map)}});
            } else if constexpr (std::is_same_v<T, While>) {
                return std::make_shared<const Command>(
                    Command{While{bind(n.cond, map), bind(n.body, map)}});
            } else if constexpr (std::is_same_v<T, Gate>) {
                return std::make_shared<const Command>(Command{Gate{n.kind, bind(n.target, map)}});
            } else {
                return std::make_shared<const Command>(
                    Command{CNot{bind(n.control, map), bind(n.target, map)}});
            }
        },
        c->node);
}

}  // namespace

Program Program::make(const std::vector<std::string>& qubit_names, CommandPtr body) {
    Program p;
    IndexMap map;
    for (std::size_t i = 0; i < qubit_names.size(); ++i) {
        p.qubits.push_back({qubit_names[i], i});
        map.emplace(qubit_names[i], i);  // first declaration wins
    }
    p.body = bind(body, map);
    return p;
}

std::vector<std::string> Program::names() const {
    std::vector<std::string> out;
    out.reserve(qubits.size());
    for (const auto& q : qubits) out.push_back(q.name);
    return out;
}

std::size_t Program::index_of(std::string_view name) const {
    for (const auto& q : qubits)
        if (q.name == name) return q.index;
    return kUnbound;
}

// ---------------------------------------------------------------------------
// validate

namespace {

void collect(const Command& c, const Program& p, std::vector<Diagnostic>& out,
             std::set<std::string>& reported) {
    auto check = [&](const QubitId& q) {
        bool ok = q.index < p.qubits.size() && p.qubits[q.index].name == q.name;
        if (!ok && reported.insert(q.name).second)
            out.push_back({Diagnostic::Kind::UndeclaredQubit, q.name,
                           "undeclared qubit '" + q.name + "'"});
    };
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Seq>) {
                collect(*n.first, p, out, reported);
                collect(*n.second, p, out, reported);
            } else if constexpr (std::is_same_v<T, If>) {
                check(n.cond);
                collect(*n.then_branch, p, out, reported);
                collect(*n.else_branch, p, out, reported);
            } else if constexpr (std::is_same_v<T, While>) {
                check(n.cond);
                collect(*n.body, p, out, reported);
            } else if constexpr (std::is_same_v<T, Gate>) {
                check(n.target);
            } else if constexpr (std::is_same_v<T, CNot>) {
                check(n.control);
                check(n.target);
                if (n.control.name == n.target.name)
                    out.push_back({Diagnostic::Kind::SelfTargetCNot, n.control.name,
                                   "CNot control and target are both '" + n.control.name + "'"});
            }
        },
        c.node);
}

}  // namespace

std::vector<Diagnostic> validate(const Program& p) {
    std::vector<Diagnostic> out;
    if (p.qubits.empty())
        out.push_back({Diagnostic::Kind::EmptyProgram, "", "program declares no qubits"});
    std::set<std::string> seen;
    for (const auto& q : p.qubits)
        if (!seen.insert(q.name).second)
            out.push_back({Diagnostic::Kind::DuplicateQubit, q.name,
                           "qubit '" + q.name + "' declared twice"});
    if (!p.body) return out;
    std::set<std::string> reported;
    collect(*p.body, p, out, reported);
    return out;
}

// ---------------------------------------------------------------------------
// lexer / parser

namespace {

struct Token {
    enum class Kind { Ident, Punct, End };
    Kind kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= src_.size()) {
                out.push_back({Token::Kind::End, "end of input", line_, col_});
                return out;
            }
            char c = src_[pos_];
            int line = line_, col = col_;
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    advance();
                out.push_back({Token::Kind::Ident, std::string(src_.substr(start, pos_ - start)),
                               line, col});
            } else if (c == ';' || c == ',' || c == '(' || c == ')' || c == '{' || c == '}') {
                advance();
                out.push_back({Token::Kind::Punct, std::string(1, c), line, col});
            } else {
                throw Error(ErrorCode::Syntax, at(line, col) + ": unexpected character '" +
                                                   std::string(1, c) + "'");
            }
        }
    }

    static std::string at(int line, int col) {
        return std::to_string(line) + ":" + std::to_string(col);
    }

  private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

const std::set<std::string>& keywords() {
    static const std::set<std::string> k{"qubits", "skip", "if", "then", "else", "while",
                                         "do",     "H",    "T",  "X",    "Y",    "Z", "CNot"};
    return k;
}

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Program program() {
        expect_word("qubits");
        std::vector<std::string> names{ident()};
        while (accept(","))
            names.push_back(ident());
        expect(";");
        CommandPtr body = stmts({});
        if (peek().kind != Token::Kind::End) fail({";", "end of input"});
        return Program::make(names, body);
    }

  private:
    // stmts := stmt (";" stmt)* [";"]; `closers` are tokens that may follow.
    CommandPtr stmts(const std::vector<std::string>& closers) {
        std::vector<CommandPtr> list{stmt()};
        while (accept(";")) {
            if (peek().kind == Token::Kind::End) break;
            bool closing = false;
            for (const auto& c : closers) closing = closing || is(c);
            if (closing) break;
            list.push_back(stmt());
        }
        return ast::seq(std::move(list));
    }

    CommandPtr stmt() {
        const Token& tok = peek();
        if (tok.kind == Token::Kind::Punct && tok.text == "{") {
            next();
            CommandPtr body = stmts({"}"});
            expect("}");
            return body;
        }
        if (tok.kind != Token::Kind::Ident) fail(statement_starts());
        const std::string word = tok.text;
        if (word == "skip") {
            next();
            return ast::skip();
        }
        if (word == "H" || word == "T" || word == "X" || word == "Y" || word == "Z") {
            next();
            expect("(");
            std::string q = ident();
            expect(")");
            static const std::unordered_map<std::string, GateKind> kinds{
                {"H", GateKind::H}, {"T", GateKind::T}, {"X", GateKind::X},
                {"Y", GateKind::Y}, {"Z", GateKind::Z}};
            return ast::gate(kinds.at(word), q);
        }
        if (word == "CNot") {
            next();
            expect("(");
            std::string c = ident();
            expect(",");
            std::string t = ident();
            expect(")");
            return ast::cnot(c, t);
        }
        if (word == "if") {
            next();
            std::string q = ident();
            expect_word("then");
            expect("{");
            CommandPtr a = stmts({"}"});
            expect("}");
            expect_word("else");
            expect("{");
            CommandPtr b = stmts({"}"});
            expect("}");
            return ast::if_(q, a, b);
        }
        if (word == "while") {
            next();
            std::string q = ident();
            expect_word("do");
            expect("{");
            CommandPtr body = stmts({"}"});
            expect("}");
            return ast::while_(q, body);
        }
        fail(statement_starts());
    }

    static std::vector<std::string> statement_starts() {
        return {"skip", "H", "T", "X", "Y", "Z", "CNot", "if", "while", "{"};
    }

    std::string ident() {
        const Token& tok = peek();
        if (tok.kind != Token::Kind::Ident || keywords().count(tok.text)) fail({"identifier"});
        next();
        return tok.text;
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool is(const std::string& punct) const {
        return peek().kind == Token::Kind::Punct && peek().text == punct;
    }
    bool accept(const std::string& punct) {
        if (!is(punct)) return false;
        next();
        return true;
    }
    void expect(const std::string& punct) {
        if (!accept(punct)) fail({punct});
    }
    void expect_word(const std::string& word) {
        if (peek().kind != Token::Kind::Ident || peek().text != word) fail({word});
        next();
    }

    [[noreturn]] void fail(const std::vector<std::string>& expected) const {
        const Token& tok = peek();
        std::ostringstream msg;
        msg << Lexer::at(tok.line, tok.column) << ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg << (i + 1 == expected.size() ? " or " : ", ");
            msg << "'" << expected[i] << "'";
        }
        msg << " but found '" << tok.text << "'";
        throw Error(ErrorCode::Syntax, msg.str());
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Program parse(std::string_view source) {
    Program p = Parser(Lexer(source).run()).program();
    for (const auto& d : validate(p)) {
        switch (d.kind) {
        case Diagnostic::Kind::UndeclaredQubit: throw Error(ErrorCode::UndeclaredQubit, d.message);
        case Diagnostic::Kind::DuplicateQubit: throw Error(ErrorCode::DuplicateQubit, d.message);
        case Diagnostic::Kind::SelfTargetCNot: throw Error(ErrorCode::SelfTargetCNot, d.message);
        case Diagnostic::Kind::EmptyProgram: throw Error(ErrorCode::Syntax, d.message);
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// unparse

namespace {

void emit(const Command& c, int indent, std::ostringstream& out);

void emit_block(const Command& c, int indent, std::ostringstream& out) {
    out << "{\n";
    emit(c, indent + 1, out);
    out << "\n" << std::string(2 * indent, ' ') << "}";
}

void emit(const Command& c, int indent, std::ostringstream& out) {
    const std::string pad(2 * indent, ' ');
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Seq>) {
                // A nested Seq on the left needs braces to survive re-parsing.
                if (std::holds_alternative<Seq>(n.first->node)) {
                    out << pad;
                    emit_block(*n.first, indent, out);
                } else {
                    emit(*n.first, indent, out);
                }
                out << ";\n";
                emit(*n.second, indent, out);
            } else if constexpr (std::is_same_v<T, If>) {
                out << pad << "if " << n.cond.name << " then ";
                emit_block(*n.then_branch, indent, out);
                out << " else ";
                emit_block(*n.else_branch, indent, out);
            } else if constexpr (std::is_same_v<T, While>) {
                out << pad << "while " << n.cond.name << " do ";
                emit_block(*n.body, indent, out);
            } else {
                out << pad << describe(c);
            }
        },
        c.node);
}

}  // namespace

std::string unparse(const Program& p) {
    std::ostringstream out;
    out << "qubits ";
    for (std::size_t i = 0; i < p.qubits.size(); ++i) out << (i ? ", " : "") << p.qubits[i].name;
    out << ";\n";
    emit(*p.body, 0, out);
    return out.str();
}

std::string describe(const Command& c) {
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Skip>) {
                return "skip";
            } else if constexpr (std::is_same_v<T, Seq>) {
                return describe(*n.first) + "; ...";
            } else if constexpr (std::is_same_v<T, If>) {
                return "if " + n.cond.name + " then {...} else {...}";
            } else if constexpr (std::is_same_v<T, While>) {
                return "while " + n.cond.name + " do {...}";
            } else if constexpr (std::is_same_v<T, Gate>) {
                return std::string(gate_name(n.kind)) + "(" + n.target.name + ")";
            } else {
                return "CNot(" + n.control.name + "," + n.target.name + ")";
            }
        },
        c.node);
}

// ---------------------------------------------------------------------------
// program points

std::string to_string(const ProgramPoint& point) {
    if (point.path.empty()) return "/";
    std::string out;
    for (Step s : point.path) {
        out += '/';
        switch (s) {
        case Step::SeqFirst: out += "first"; break;
        case Step::SeqSecond: out += "second"; break;
        case Step::IfThen: out += "then"; break;
        case Step::IfElse: out += "else"; break;
        case Step::WhileBody: out += "body"; break;
        }
    }
    return out;
}

const Command* resolve(const Command& root, const ProgramPoint& point) {
    const Command* cur = &root;
    for (Step s : point.path) {
        if (const auto* seq = std::get_if<Seq>(&cur->node)) {
            if (s == Step::SeqFirst) cur = seq->first.get();
            else if (s == Step::SeqSecond) cur = seq->second.get();
            else return nullptr;
        } else if (const auto* cond = std::get_if<If>(&cur->node)) {
            if (s == Step::IfThen) cur = cond->then_branch.get();
            else if (s == Step::IfElse) cur = cond->else_branch.get();
            else return nullptr;
        } else if (const auto* loop = std::get_if<While>(&cur->node)) {
            if (s != Step::WhileBody) return nullptr;
            cur = loop->body.get();
        } else {
            return nullptr;
        }
    }
    return cur;
}

std::size_t count_nodes(const Command& c) {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Seq>)
                return 1 + count_nodes(*n.first) + count_nodes(*n.second);
            else if constexpr (std::is_same_v<T, If>)
                return 1 + count_nodes(*n.then_branch) + count_nodes(*n.else_branch);
            else if constexpr (std::is_same_v<T, While>)
                return 1 + count_nodes(*n.body);
            else
                return 1;
        },
        c.node);
}

std::size_t count_measurements(const Command& c) {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Seq>)
                return count_measurements(*n.first) + count_measurements(*n.second);
            else if constexpr (std::is_same_v<T, If>)
                return 1 + count_measurements(*n.then_branch) + count_measurements(*n.else_branch);
            else if constexpr (std::is_same_v<T, While>)
                return 1 + count_measurements(*n.body);
            else
                return 0;
        },
        c.node);
}

}  // namespace qent
