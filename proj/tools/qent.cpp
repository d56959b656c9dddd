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

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "qent/qent.h"

namespace {

struct Options {
    std::string file;
    std::string init;
    std::string flags;
    std::string blocks;
    std::string format = "text";
    bool from_init = false;
    bool random = false;
    bool strict = false;
    bool trace = false;
    bool matrix = false;
    bool literal_cnot = false;
};

const char* or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int fail(qent_status s, const std::string& command) {
    std::cerr << "qent " << command << ": " << qent_status_name(s) << ": " << qent_last_error() << "\n";
    return qent_status_exit_code(s, command.c_str());
}

int finish(qent_status s, qent_report* r, const std::string& command) {
    if (s != QENT_OK) return fail(s, command);
    std::fputs(qent_report_text(r), stdout);
    const int code = qent_report_exit_code(r);
    qent_report_free(r);
    return code;
}

void add_run_options(CLI::App* cmd, qent_config& cfg, Options& o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--epsilon", cfg.epsilon, "Stop a loop once the trace still inside it is below this")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", cfg.max_iterations, "Loop iteration cap")->check(CLI::PositiveNumber);
    cmd->add_option("--branch-cap", cfg.branch_cap, "Maximum number of ensemble branches")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", cfg.tolerance, "Numerical tolerance of the basis and separability tests")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--strict", o.strict, "Exit 5 when a loop is cut off with trace still pending");
}

void add_abstract_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--flags", o.flags, "Initial flags, e.g. q1=top,q2=s (omitted qubits: s)");
    cmd->add_option("--blocks", o.blocks, "Initial partition, e.g. {q1,q4} (omitted qubits: singletons)");
    cmd->add_flag("--from-init", o.from_init, "Derive the abstract input from --init");
}

}  // namespace

int main(int argc, char** argv) {
    qent_config cfg;
    qent_config_init(&cfg);
    if (const char* env = std::getenv("QENT_MAX_QUBITS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (*env == '\0' || *end != '\0' || v == 0) {
            std::cerr << "qent: QENT_MAX_QUBITS must be a positive integer\n";
            return 1;
        }
        cfg.max_qubits = v;
    }

    Options o;
    CLI::App app{"qent: simulate and analyse entanglement in small quantum programs"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 ok/PASS, 1 parse/validation/IO error, 2 FAIL or malformed abstract element,\n"
               "3 INCONCLUSIVE, 4 capacity exceeded, 5 non-termination with --strict.\n"
               "QENT_MAX_QUBITS overrides the qubit capacity (default 10).");

    auto* simulate = app.add_subcommand("simulate", "Run the density-matrix semantics");
    simulate->add_option("file", o.file, "Program (.qpl)")->required();
    simulate->add_option("--init", o.init, "Initial state: q1=plus,q2=true,bell(q3,q4) or state.json");
    simulate->add_flag("--matrix", o.matrix, "Print the full output matrix");
    add_run_options(simulate, cfg, o);

    auto* analyze = app.add_subcommand("analyze", "Run the abstract semantics");
    analyze->add_option("file", o.file, "Program (.qpl)")->required();
    analyze->add_option("--init", o.init, "Concrete init used by --from-init");
    analyze->add_flag("--trace", o.trace, "Print the abstract element at every program point");
    analyze->add_flag("--literal-cnot", o.literal_cnot, "Map CNot on (bot, bot) to (s, d)");
    add_abstract_options(analyze, o);
    analyze->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* check = app.add_subcommand("check", "Check the abstract result against the concrete one");
    check->add_option("file", o.file, "Program (.qpl)");
    check->add_option("--init", o.init, "Initial state (default: all true)");
    check->add_flag("--random", o.random, "Check generated programs instead of a file");
    check->add_option("--cases", cfg.cases, "Number of generated programs");
    check->add_option("--seed", cfg.seed, "Seed of the first generated program");
    check->add_flag("--literal-cnot", o.literal_cnot, "Map CNot on (bot, bot) to (s, d)");
    add_abstract_options(check, o);
    add_run_options(check, cfg, o);

    auto* fuzz = app.add_subcommand("fuzz", "Randomized soundness suite");
    fuzz->add_option("--cases", cfg.cases, "Number of generated programs");
    fuzz->add_option("--seed", cfg.seed, "Seed of the first generated program");
    fuzz->add_flag("--literal-cnot", o.literal_cnot, "Map CNot on (bot, bot) to (s, d)");
    add_run_options(fuzz, cfg, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    cfg.json = o.format == "json";
    cfg.strict = o.strict;
    cfg.trace = o.trace;
    cfg.show_matrix = o.matrix;
    cfg.literal_bottom_cnot = o.literal_cnot;

    const qent_abstract_init abs{or_null(o.flags), or_null(o.blocks), o.from_init ? 1 : 0};
    qent_report* report = nullptr;

    if (*fuzz || (*check && o.random)) {
        const std::string name = *fuzz ? "fuzz" : "check";
        if (!o.file.empty()) {
            std::cerr << "qent check: --random does not take a program file\n";
            return 1;
        }
        const qent_status s = qent_fuzz(&cfg, &report);
        return finish(s, report, name);
    }

    const std::string name = *simulate ? "simulate" : *analyze ? "analyze" : "check";
    if (o.file.empty()) {
        std::cerr << "qent " << name << ": a program file is required\n";
        return 1;
    }
    qent_program* program = nullptr;
    if (qent_status s = qent_program_load(o.file.c_str(), &program); s != QENT_OK) return fail(s, name);

    qent_status s;
    if (*simulate) s = qent_simulate(program, or_null(o.init), &cfg, &report);
    else if (*analyze) s = qent_analyze(program, &abs, or_null(o.init), &cfg, &report);
    else s = qent_check(program, or_null(o.init), &abs, &cfg, &report);
    qent_program_free(program);
    return finish(s, report, name);
}
