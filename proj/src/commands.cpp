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

#include "qent/commands.hpp"

#include <cstdio>
#include <sstream>

#include "qent/init.hpp"
#include "qent/random.hpp"
#include "qent/report.hpp"

namespace qent {

using nlohmann::json;

namespace {

constexpr std::size_t kFuzzLoopCap = 64;

std::string fixed(double x, int precision = 9) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, x);
    return buf;
}

std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

void require_capacity(const Program& p, const RunConfig& cfg) {
    if (p.size() > cfg.max_qubits)
        throw Error(ErrorCode::CapacityExceeded, "program declares " + std::to_string(p.size()) +
                                                     " qubits, capacity is " + std::to_string(cfg.max_qubits));
}

InitSpec init_spec(const Program& p, const std::optional<std::string>& init) {
    return init ? parse_init(*init, p.names()) : default_init(p.size());
}

// One-line rendering of a small matrix: rows separated by "; ".
std::string inline_matrix(const CMatrix& m) {
    std::string text = report::matrix_text(m, 4);
    std::string out = "[";
    for (char c : text) out += c == '\n' ? std::string("; ") : std::string(1, c);
    if (out.size() >= 3) out.resize(out.size() - 2);
    return out + "]";
}

AbstractElement resolve_abstract(const Program& p, const AbstractInit& abs, const std::optional<std::string>& init,
                                 bool derive_by_default, const RunConfig& cfg) {
    const auto names = p.names();
    const bool explicit_abs = abs.flags || abs.blocks;
    if (abs.from_init && explicit_abs)
        throw Error(ErrorCode::MalformedAbstract, "--from-init cannot be combined with --flags/--blocks");
    if (abs.from_init || (!explicit_abs && derive_by_default && init)) {
        require_capacity(p, cfg);
        const InitSpec spec = init_spec(p, init);
        AbstractElement a = derive_abstract(spec, names, cfg.tolerance);
        if (!in_sigma(init_ensemble(spec, names), a, cfg.tolerance))
            throw Error(ErrorCode::PreconditionViolated, "derived abstract element does not cover the init");
        return a;
    }
    AbstractElement a{BasisMap(p.size(), Flag::S), Partition(p.size())};
    if (abs.flags) a.basis = parse_flags(*abs.flags, names, Flag::S);
    if (abs.blocks) a.partition = parse_blocks(*abs.blocks, names);
    return a;
}

AbstractElement coarsen(AbstractElement a, Rng& rng) {
    const std::size_t n = a.size();
    for (auto& f : a.basis)
        if (rng.chance(0.3)) f = flag_join(f, static_cast<Flag>(rng.below(4)));
    if (n >= 2 && rng.chance(0.3)) {
        const std::size_t x = rng.below(n);
        const std::size_t y = (x + 1 + rng.below(n - 1)) % n;
        a.partition = partition_join(a.partition, pair_partition(x, y, n));
    }
    return a;
}

}  // namespace

int exit_code_for(ErrorCode code, const std::string& command) {
    switch (code) {
    case ErrorCode::CapacityExceeded: return kExitCapacity;
    case ErrorCode::MalformedAbstract: return command == "analyze" ? kExitFail : kExitError;
    default: return kExitError;
    }
}

int exit_code_for(Verdict v) {
    switch (v) {
    case Verdict::Pass: return kExitOk;
    case Verdict::Fail: return kExitFail;
    case Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitError;
}

CommandOutput cmd_simulate(const Program& p, const std::optional<std::string>& init, const RunConfig& cfg) {
    require_capacity(p, cfg);
    const auto names = p.names();
    const InitSpec spec = init_spec(p, init);
    const PureEnsemble init_ens = init_ensemble(spec, names);
    const EvalResult result = eval(p, mixture(init_ens), cfg.loop());
    const CMatrix& rho = result.state.matrix;
    const BasisMap b = beta(rho, cfg.tolerance);

    std::optional<PureEnsemble> ens;
    std::string ens_note;
    try {
        ens = eval_ensemble(p, init_ens, cfg.loop());
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BranchExplosion) throw;
        ens_note = e.what();
    }

    CommandOutput out;
    if (result.nonterminating && cfg.strict) out.exit_code = kExitNonTermination;

    if (cfg.json) {
        json j = report::state_json(result.state);
        j["residual"] = result.residual;
        j["nonterminating"] = result.nonterminating;
        j["loop_iterations"] = result.loop_iterations;
        j["beta"] = report::flags_json(b, names);
        json reduced = json::object();
        for (std::size_t q = 0; q < names.size(); ++q) {
            const std::size_t keep[] = {q};
            reduced[names[q]] = report::matrix_json(partial_trace(rho, keep));
        }
        j["reduced"] = reduced;
        if (ens) j["ensemble"] = report::ensemble_json(*ens)["branches"];
        else j["ensemble_note"] = ens_note;
        out.text = j.dump(2) + "\n";
        return out;
    }

    std::ostringstream os;
    os << "qubits    ";
    for (std::size_t q = 0; q < names.size(); ++q) os << (q ? " " : "") << names[q];
    os << "\ninit      " << format_init(spec, names) << "\n";
    os << "trace     " << fixed(trace(rho).real()) << "\n";
    os << "residual  " << sci(result.residual) << " after " << result.loop_iterations << " loop iterations\n";
    if (result.nonterminating) os << "warning   a loop hit --max-iter with trace still pending\n";
    os << "beta      " << format_flags(b, names) << "\n";
    for (std::size_t q = 0; q < names.size(); ++q) {
        const std::size_t keep[] = {q};
        os << "  " << names[q] << "  " << inline_matrix(partial_trace(rho, keep)) << "\n";
    }
    if (cfg.show_matrix) os << "matrix\n" << report::matrix_text(rho);
    if (ens) {
        os << "branches  " << ens->branches.size() << "\n";
        for (const auto& br : ens->branches) {
            std::string mixed;
            for (std::size_t q = 0; q < names.size(); ++q)
                if (br.is_mixed(q)) mixed += (mixed.empty() ? "" : ",") + names[q];
            os << "  " << fixed(br.weight) << "  " << (br.path.empty() ? "-" : br.path);
            if (!mixed.empty()) os << "  mixed " << mixed;
            os << "\n";
        }
    } else {
        os << "branches  not enumerated: " << ens_note << "\n";
    }
    out.text = os.str();
    return out;
}

CommandOutput cmd_analyze(const Program& p, const AbstractInit& abs, const std::optional<std::string>& init,
                          const RunConfig& cfg) {
    const auto names = p.names();
    const AbstractElement a = resolve_abstract(p, abs, init, false, cfg);
    AbstractOptions opts;
    opts.literal_bottom_cnot = cfg.literal_bottom_cnot;
    AnalysisDiagnostics diag;
    const AbstractElement result = abstract_eval(p, a, opts, &diag);

    AbstractTrace tr;
    if (cfg.trace) tr = trace_eval(*p.body, a, opts);

    CommandOutput out;
    if (cfg.json) {
        json j = report::element_json(result, names);
        j["qubits"] = names;
        j["input"] = report::element_json(a, names);
        j["text"] = format_element(result, names);
        if (cfg.trace) {
            json rows = json::array();
            for (const auto& [point, tp] : tr)
                rows.push_back({{"point", to_string(point)},
                                {"command", describe(*resolve(*p.body, point))},
                                {"entry", report::element_json(tp.entry, names)},
                                {"exit", report::element_json(tp.exit, names)}});
            j["trace"] = rows;
        }
        out.text = j.dump(2) + "\n";
        return out;
    }
    out.text = format_element(result, names) + "\n";
    if (cfg.trace) {
        std::ostringstream os;
        for (const auto& [point, tp] : tr)
            os << to_string(point) << "\t" << describe(*resolve(*p.body, point)) << "\n"
               << "  in   " << format_element(tp.entry, names) << "\n"
               << "  out  " << format_element(tp.exit, names) << "\n";
        out.text += os.str();
    }
    return out;
}

CommandOutput cmd_check(const Program& p, const std::optional<std::string>& init, const AbstractInit& abs,
                        const RunConfig& cfg) {
    require_capacity(p, cfg);
    const auto names = p.names();
    const AbstractElement a = resolve_abstract(p, abs, init, true, cfg);
    AbstractOptions opts;
    opts.literal_bottom_cnot = cfg.literal_bottom_cnot;
    SoundnessReport r = check_sound(p, init_ensemble(init_spec(p, init), names), a, cfg.loop(), cfg.tolerance, opts);
    r.seed = cfg.seed;

    CommandOutput out;
    out.exit_code = exit_code_for(r.verdict);
    if (r.nonterminating && cfg.strict && out.exit_code == kExitOk) out.exit_code = kExitNonTermination;
    if (cfg.json) {
        out.text = report::soundness_json(r).dump(2) + "\n";
        return out;
    }
    std::ostringstream os;
    os << "verdict   " << to_string(r.verdict) << "\n";
    os << "claimed   " << format_element(r.claimed, names) << "\n";
    if (!r.beta.empty()) os << "beta      " << format_flags(r.beta, names) << (r.beta_ok ? "  (<= claimed)" : "  (NOT <= claimed)") << "\n";
    os << "witness   " << to_string(r.witness) << " over " << r.branches << " branches\n";
    os << "residual  " << sci(r.residual) << "\n";
    if (!r.note.empty()) os << "note      " << r.note << "\n";
    out.text = os.str();
    return out;
}

FuzzSummary run_fuzz(std::uint64_t seed, std::size_t cases, const RunConfig& cfg, const GeneratorConfig& gen) {
    FuzzSummary s;
    LoopConfig loop = cfg.loop();
    loop.max_iterations = kFuzzLoopCap;
    AbstractOptions opts;
    opts.literal_bottom_cnot = cfg.literal_bottom_cnot;
    for (std::size_t i = 0; i < cases; ++i) {
        const std::uint64_t case_seed = seed + i;
        const Program p = generate_program(case_seed, gen);
        Rng rng(case_seed * 0x2545f4914f6cdd1dULL + 1);
        const InitSpec spec = random_init(rng, p.size(), 0.0);
        AbstractElement a = derive_abstract(spec, p.names(), cfg.tolerance);
        if (rng.chance(1.0 / 3.0)) a = coarsen(a, rng);
        SoundnessReport r = check_sound(p, init_ensemble(spec, p.names()), a, loop, cfg.tolerance, opts);
        r.seed = case_seed;
        ++s.cases;
        switch (r.verdict) {
        case Verdict::Pass: ++s.pass; break;
        case Verdict::Fail: ++s.fail; break;
        case Verdict::Inconclusive: ++s.inconclusive; break;
        }
        if (r.verdict != Verdict::Pass) {
            if (r.note.empty()) r.note = "init " + format_init(spec, p.names());
            else r.note += "; init " + format_init(spec, p.names());
            s.problems.push_back(std::move(r));
        }
    }
    return s;
}

std::string fuzz_summary_line(const FuzzSummary& s) {
    std::string line = std::to_string(s.pass) + "/" + std::to_string(s.cases) + " PASS, " +
                       std::to_string(s.inconclusive) + " inconclusive";
    if (s.fail) line += ", " + std::to_string(s.fail) + " FAIL";
    return line;
}

CommandOutput cmd_fuzz(const RunConfig& cfg) {
    const FuzzSummary s = run_fuzz(cfg.seed, cfg.cases, cfg);
    CommandOutput out;
    out.exit_code = s.fail ? kExitFail : s.inconclusive ? kExitInconclusive : kExitOk;
    if (cfg.json) {
        json problems = json::array();
        for (const auto& r : s.problems) problems.push_back(report::soundness_json(r));
        json j{{"cases", s.cases},   {"pass", s.pass},     {"fail", s.fail}, {"inconclusive", s.inconclusive},
               {"seed", cfg.seed},   {"summary", fuzz_summary_line(s)}, {"problems", problems}};
        out.text = j.dump(2) + "\n";
        return out;
    }
    std::ostringstream os;
    for (const auto& r : s.problems)
        os << "seed " << r.seed << ": " << to_string(r.verdict) << " " << r.note << "\n" << r.program << "\n";
    os << fuzz_summary_line(s) << "\n";
    out.text = os.str();
    return out;
}

}  // namespace qent
