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

#include "qent/qent.h"

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "qent/commands.hpp"

struct qent_program {
    qent::Program program;
    std::string source;
};

struct qent_report {
    qent::CommandOutput output;
};

namespace {

thread_local std::string last_error;

qent_status status_of(qent::ErrorCode code) { return static_cast<qent_status>(static_cast<int>(code) + 1); }

qent::ErrorCode code_of(qent_status s) { return static_cast<qent::ErrorCode>(static_cast<int>(s) - 1); }

qent::RunConfig run_config(const qent_config* c) {
    qent::RunConfig r;
    if (!c) return r;
    r.epsilon = c->epsilon;
    r.max_iterations = c->max_iterations;
    r.branch_cap = c->branch_cap;
    r.max_qubits = c->max_qubits;
    r.tolerance = c->tolerance;
    r.json = c->json != 0;
    r.seed = c->seed;
    r.cases = c->cases;
    r.strict = c->strict != 0;
    r.trace = c->trace != 0;
    r.show_matrix = c->show_matrix != 0;
    r.literal_bottom_cnot = c->literal_bottom_cnot != 0;
    return r;
}

qent::AbstractInit abstract_init(const qent_abstract_init* a) {
    qent::AbstractInit out;
    if (!a) return out;
    if (a->flags) out.flags = a->flags;
    if (a->blocks) out.blocks = a->blocks;
    out.from_init = a->from_init != 0;
    return out;
}

std::optional<std::string> opt(const char* s) { return s ? std::optional<std::string>(s) : std::nullopt; }

template <typename F>
qent_status guarded(F&& f) {
    last_error.clear();
    try {
        f();
        return QENT_OK;
    } catch (const qent::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return QENT_ERR_CAPACITY;
    } catch (const std::exception& e) {
        last_error = e.what();
        return QENT_ERR_INTERNAL;
    }
}

qent_status bad_argument(const char* what) {
    last_error = what;
    return QENT_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

void qent_config_init(qent_config* cfg) {
    if (!cfg) return;
    const qent::RunConfig d;
    cfg->epsilon = d.epsilon;
    cfg->max_iterations = d.max_iterations;
    cfg->branch_cap = d.branch_cap;
    cfg->max_qubits = d.max_qubits;
    cfg->tolerance = d.tolerance;
    cfg->json = 0;
    cfg->seed = d.seed;
    cfg->cases = d.cases;
    cfg->strict = 0;
    cfg->trace = 0;
    cfg->show_matrix = 0;
    cfg->literal_bottom_cnot = 0;
}

qent_status qent_program_parse(const char* source, qent_program** out) {
    if (!source || !out) return bad_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        auto p = std::make_unique<qent_program>();
        p->program = qent::parse(source);
        p->source = qent::unparse(p->program);
        *out = p.release();
    });
}

qent_status qent_program_load(const char* path, qent_program** out) {
    if (!path || !out) return bad_argument("null argument");
    *out = nullptr;
    std::ifstream in(path);
    if (!in) {
        last_error = std::string("cannot open '") + path + "'";
        return QENT_ERR_IO;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const qent_status s = qent_program_parse(text.c_str(), out);
    if (s != QENT_OK) last_error = std::string(path) + ": " + last_error;
    return s;
}

void qent_program_free(qent_program* p) { delete p; }

size_t qent_program_qubits(const qent_program* p) { return p ? p->program.size() : 0; }

const char* qent_program_source(const qent_program* p) { return p ? p->source.c_str() : ""; }

qent_status qent_simulate(const qent_program* p, const char* init, const qent_config* cfg, qent_report** out) {
    if (!p || !out) return bad_argument("null argument");
    *out = nullptr;
    return guarded([&] { *out = new qent_report{qent::cmd_simulate(p->program, opt(init), run_config(cfg))}; });
}

qent_status qent_analyze(const qent_program* p, const qent_abstract_init* abs, const char* init,
                         const qent_config* cfg, qent_report** out) {
    if (!p || !out) return bad_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new qent_report{qent::cmd_analyze(p->program, abstract_init(abs), opt(init), run_config(cfg))};
    });
}

qent_status qent_check(const qent_program* p, const char* init, const qent_abstract_init* abs,
                       const qent_config* cfg, qent_report** out) {
    if (!p || !out) return bad_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new qent_report{qent::cmd_check(p->program, opt(init), abstract_init(abs), run_config(cfg))};
    });
}

qent_status qent_fuzz(const qent_config* cfg, qent_report** out) {
    if (!out) return bad_argument("null argument");
    *out = nullptr;
    return guarded([&] { *out = new qent_report{qent::cmd_fuzz(run_config(cfg))}; });
}

const char* qent_report_text(const qent_report* r) { return r ? r->output.text.c_str() : ""; }

int qent_report_exit_code(const qent_report* r) { return r ? r->output.exit_code : qent::kExitError; }

void qent_report_free(qent_report* r) { delete r; }

const char* qent_last_error(void) { return last_error.c_str(); }

const char* qent_status_name(qent_status s) {
    switch (s) {
    case QENT_OK: return "OK";
    case QENT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case QENT_ERR_INTERNAL: return "Internal";
    default:
        if (s > QENT_OK && s < QENT_ERR_INVALID_ARGUMENT) return qent::to_string(code_of(s));
        return "Unknown";
    }
}

int qent_status_exit_code(qent_status s, const char* command) {
    if (s == QENT_OK) return qent::kExitOk;
    if (s > QENT_OK && s < QENT_ERR_INVALID_ARGUMENT)
        return qent::exit_code_for(code_of(s), command ? command : "");
    return qent::kExitError;
}

}  // extern "C"
