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

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    std::string out;
    int code = -1;
};

Run qent(const std::string& args) {
    const std::string cmd = std::string(QENT_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string prog(const char* name) { return std::string(QENT_PROGRAMS) + "/" + name; }

}  // namespace

TEST_CASE("analyze golden output") {
    auto r = qent("analyze " + prog("teleport.qpl") + " --flags q1=top,q2=s,q3=s");
    CHECK(r.out == "q1:s q2:s q3:top | {q1}{q2}{q3}\n");
    CHECK(r.code == 0);
    r = qent("analyze " + prog("teleport4.qpl") + " --flags q1=top,q2=s,q3=s,q4=s --blocks '{q1,q4}'");
    CHECK(r.out == "q1:s q2:s q3:top q4:s | {q1}{q2}{q3,q4}\n");
    r = qent("analyze " + prog("trap.qpl") + " --flags q1=d,q2=s");
    CHECK(r.out == "q1:top q2:top | {q1,q2}\n");
}

TEST_CASE("analyze json and trace") {
    auto r = qent("analyze " + prog("trap.qpl") + " --flags q1=d,q2=s --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["flags"]["q1"] == "top");
    CHECK(j["blocks"] == nlohmann::json::parse(R"([["q1","q2"]])"));
    r = qent("analyze " + prog("teleport.qpl") + " --trace");
    CHECK(r.code == 0);
    CHECK(r.out.find("CNot(q2,q3)") != std::string::npos);
    r = qent("analyze " + prog("teleport.qpl") + " --init q1=tstate,q2=true,q3=true --from-init");
    CHECK(r.out == "q1:s q2:s q3:top | {q1}{q2}{q3}\n");
}

TEST_CASE("simulate") {
    auto r = qent("simulate " + prog("teleport.qpl") + " --init q1=plus,q2=true,q3=true --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["qubits"].size() == 3);
    CHECK(j["trace"].get<double>() == doctest::Approx(1.0));
    CHECK(j["matrix"].size() == 8);
    CHECK(j["matrix"][0][0].size() == 2);
    const auto q3 = j["reduced"]["q3"];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(std::abs(q3[a][b][0].get<double>() - 0.5) < 1e-9);
    CHECK(j["ensemble"].size() == 4);

    r = qent("simulate " + prog("while_h.qpl") + " --init q=mixed");
    CHECK(r.code == 0);
    CHECK(r.out.find("beta      q:s") != std::string::npos);
    r = qent("simulate " + prog("trap.qpl") + " --init q1=mixed,q2=true --matrix");
    CHECK(r.out.find("matrix") != std::string::npos);
}

TEST_CASE("check") {
    auto r = qent("check " + prog("teleport.qpl") + " --init q1=tstate,q2=true,q3=true --flags q1=top --format json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"verdict", "beta_ok", "beta", "claimed_flags", "claimed_blocks", "witness", "residual", "seed", "program"})
        CHECK(j.contains(key));
    CHECK(j["verdict"] == "PASS");
    CHECK(j["witness"] == "witnessed");
    r = qent("check " + prog("trap.qpl") + " --init q1=plus,q2=true");
    CHECK(r.code == 0);
    r = qent("check --random --cases 20 --seed 3");
    CHECK(r.code == 0);
    CHECK(r.out == "20/20 PASS, 0 inconclusive\n");
    r = qent("fuzz --cases 0");
    CHECK(r.out == "0/0 PASS, 0 inconclusive\n");
    CHECK(r.code == 0);
}

TEST_CASE("exit codes") {
    CHECK(qent("simulate /nonexistent.qpl").code == 1);
    CHECK(qent("frobnicate").code == 1);
    CHECK(qent("analyze " + prog("trap.qpl") + " --flags q1=maybe").code == 2);
    CHECK(qent("analyze " + prog("trap.qpl") + " --blocks '{q1,q9}'").code == 2);
    CHECK(qent("simulate " + prog("trap.qpl") + " --init q1=true").code == 1);
    CHECK(qent("check " + prog("trap.qpl") + " --init q1=plus,q2=true --flags q1=s").code == 1);
    const std::string env = "QENT_MAX_QUBITS=1 ";
    const Run cap = [&] {
        Run r;
        FILE* pipe = popen((env + QENT_CLI + " simulate " + prog("trap.qpl") + " 2>/dev/null").c_str(), "r");
        const int status = pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        return r;
    }();
    CHECK(cap.code == 4);
    CHECK(qent("simulate " + prog("while_h.qpl") + " --init q=true --max-iter 3 --strict").code == 5);
    CHECK(qent("simulate " + prog("while_h.qpl") + " --init q=true --max-iter 3").code == 0);
    CHECK(qent("check " + prog("teleport.qpl") + " --init q1=plus,q2=true,q3=true --branch-cap 2").code == 3);
    CHECK(qent("--help").code == 0);
}
