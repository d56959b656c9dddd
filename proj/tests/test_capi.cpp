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

#include <doctest.h>

#include <string>

#include "qent/qent.h"

TEST_CASE("parse, unparse, free") {
    qent_program* p = nullptr;
    REQUIRE(qent_program_parse("qubits q; skip", &p) == QENT_OK);
    CHECK(qent_program_qubits(p) == 1);
    CHECK(std::string(qent_program_source(p)) == "qubits q;\nskip");
    qent_program_free(p);

    CHECK(qent_program_parse("qubits q; CNot(q,q)", &p) == QENT_ERR_SELF_TARGET_CNOT);
    CHECK(p == nullptr);
    CHECK(std::string(qent_last_error()).find("q") != std::string::npos);
    CHECK(qent_program_parse("qubits q; H(", &p) == QENT_ERR_SYNTAX);
    CHECK(qent_program_parse(nullptr, &p) == QENT_ERR_INVALID_ARGUMENT);
    CHECK(qent_program_load("/nonexistent/x.qpl", &p) == QENT_ERR_IO);
    CHECK(std::string(qent_status_name(QENT_ERR_SYNTAX)) == "SyntaxError");
}

TEST_CASE("commands through the C interface") {
    qent_config cfg;
    qent_config_init(&cfg);
    CHECK(cfg.max_qubits == 10);
    CHECK(cfg.epsilon == 1e-9);

    qent_program* p = nullptr;
    REQUIRE(qent_program_parse("qubits q1, q2; CNot(q1, q2); CNot(q1, q2)", &p) == QENT_OK);

    qent_abstract_init abs{"q1=d,q2=s", nullptr, 0};
    qent_report* r = nullptr;
    REQUIRE(qent_analyze(p, &abs, nullptr, &cfg, &r) == QENT_OK);
    CHECK(std::string(qent_report_text(r)) == "q1:top q2:top | {q1,q2}\n");
    CHECK(qent_report_exit_code(r) == 0);
    qent_report_free(r);

    REQUIRE(qent_check(p, "q1=plus,q2=true", nullptr, &cfg, &r) == QENT_OK);
    CHECK(qent_report_exit_code(r) == 0);
    CHECK(std::string(qent_report_text(r)).find("PASS") != std::string::npos);
    qent_report_free(r);

    REQUIRE(qent_simulate(p, "q1=mixed,q2=true", &cfg, &r) == QENT_OK);
    qent_report_free(r);

    qent_abstract_init bad{"q1=maybe", nullptr, 0};
    const qent_status s = qent_analyze(p, &bad, nullptr, &cfg, &r);
    CHECK(s == QENT_ERR_MALFORMED_ABSTRACT);
    CHECK(qent_status_exit_code(s, "analyze") == 2);
    CHECK(qent_status_exit_code(s, "check") == 1);

    cfg.max_qubits = 1;
    const qent_status cap = qent_simulate(p, nullptr, &cfg, &r);
    CHECK(cap == QENT_ERR_CAPACITY);
    CHECK(qent_status_exit_code(cap, "simulate") == 4);
    qent_program_free(p);
}

TEST_CASE("fuzz through the C interface") {
    qent_config cfg;
    qent_config_init(&cfg);
    cfg.cases = 0;
    qent_report* r = nullptr;
    REQUIRE(qent_fuzz(&cfg, &r) == QENT_OK);
    CHECK(std::string(qent_report_text(r)) == "0/0 PASS, 0 inconclusive\n");
    CHECK(qent_report_exit_code(r) == 0);
    qent_report_free(r);

    cfg.cases = 50;
    cfg.seed = 99;
    REQUIRE(qent_fuzz(&cfg, &r) == QENT_OK);
    const std::string first = qent_report_text(r);
    qent_report_free(r);
    REQUIRE(qent_fuzz(&cfg, &r) == QENT_OK);
    CHECK(first == qent_report_text(r));
    qent_report_free(r);
}
