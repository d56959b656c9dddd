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

#ifndef QENT_QENT_H
#define QENT_QENT_H

#include <stddef.h>
#include <stdint.h>

#if defined(QENT_BUILDING_LIBRARY)
#define QENT_API __attribute__((visibility("default")))
#else
#define QENT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qent_program qent_program;
typedef struct qent_report qent_report;

typedef enum qent_status {
    QENT_OK = 0,
    QENT_ERR_SYNTAX,
    QENT_ERR_UNDECLARED_QUBIT,
    QENT_ERR_DUPLICATE_QUBIT,
    QENT_ERR_SELF_TARGET_CNOT,
    QENT_ERR_CAPACITY,
    QENT_ERR_BAD_TARGET,
    QENT_ERR_NOT_HERMITIAN,
    QENT_ERR_MISMATCHED_QUBITS,
    QENT_ERR_BRANCH_EXPLOSION,
    QENT_ERR_PRECONDITION,
    QENT_ERR_MALFORMED_ABSTRACT,
    QENT_ERR_MALFORMED_INIT,
    QENT_ERR_IO,
    QENT_ERR_INVALID_ARGUMENT,
    QENT_ERR_INTERNAL
} qent_status;

typedef struct qent_config {
    double epsilon;
    size_t max_iterations;
    size_t branch_cap;
    size_t max_qubits;
    double tolerance;
    int json;
    uint64_t seed;
    size_t cases;
    int strict;
    int trace;
    int show_matrix;
    int literal_bottom_cnot;
} qent_config;

/* Abstract input for analyze/check. NULL strings mean "not given". */
typedef struct qent_abstract_init {
    const char* flags;
    const char* blocks;
    int from_init;
} qent_abstract_init;

QENT_API void qent_config_init(qent_config* cfg);

QENT_API qent_status qent_program_parse(const char* source, qent_program** out);
QENT_API qent_status qent_program_load(const char* path, qent_program** out);
QENT_API void qent_program_free(qent_program* p);
QENT_API size_t qent_program_qubits(const qent_program* p);
/* Canonical source text; owned by the program handle. */
QENT_API const char* qent_program_source(const qent_program* p);

/* init may be NULL (all qubits true). */
QENT_API qent_status qent_simulate(const qent_program* p, const char* init, const qent_config* cfg,
                                   qent_report** out);
QENT_API qent_status qent_analyze(const qent_program* p, const qent_abstract_init* abs, const char* init,
                                  const qent_config* cfg, qent_report** out);
QENT_API qent_status qent_check(const qent_program* p, const char* init, const qent_abstract_init* abs,
                                const qent_config* cfg, qent_report** out);
QENT_API qent_status qent_fuzz(const qent_config* cfg, qent_report** out);

QENT_API const char* qent_report_text(const qent_report* r);
QENT_API int qent_report_exit_code(const qent_report* r);
QENT_API void qent_report_free(qent_report* r);

/* Message of the last failure on this thread, "" if none. */
QENT_API const char* qent_last_error(void);
QENT_API const char* qent_status_name(qent_status s);
/* Process exit code for a failed command ("simulate", "analyze", ...). */
QENT_API int qent_status_exit_code(qent_status s, const char* command);

#ifdef __cplusplus
}
#endif

#endif
