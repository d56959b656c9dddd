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

#include <cstdio>
#include <fstream>

#include "oracles.hpp"
#include "qent/init.hpp"
#include "qent/soundness.hpp"

using namespace qent;

namespace {

const std::vector<std::string> kNames{"q1", "q2", "q3", "q4"};

ErrorCode init_error(const char* text) {
    try {
        parse_init(text, kNames);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an init error");
    return ErrorCode::Io;
}

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = "qent_test_" + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("presets") {
    CHECK(approx_eq(preset_density(Preset::True), gates::P_true()));
    CHECK(approx_eq(preset_density(Preset::False), gates::P_false()));
    CHECK(approx_eq(preset_density(Preset::Plus), gates::H() * gates::P_true() * gates::H()));
    CHECK(approx_eq(preset_density(Preset::Minus), gates::H() * gates::P_false() * gates::H()));
    CHECK(approx_eq(preset_density(Preset::Mixed), CMatrix::identity(2) * 0.5));
    const CMatrix t = gates::T() * gates::H() * gates::P_true() * gates::H() * gates::T().adjoint();
    CHECK(approx_eq(preset_density(Preset::TState), t));
}

TEST_CASE("preset flags follow beta") {
    const std::pair<Preset, Flag> table[] = {{Preset::True, Flag::S},   {Preset::False, Flag::S},
                                             {Preset::Plus, Flag::D},   {Preset::Minus, Flag::D},
                                             {Preset::Mixed, Flag::Bot}, {Preset::TState, Flag::Top}};
    for (const auto& [p, f] : table) {
        InitSpec spec;
        spec.presets = {p};
        CHECK(derive_abstract(spec, {"q"}).basis[0] == f);
        CHECK(beta(preset_density(p))[0] == f);
    }
}

TEST_CASE("parse_init") {
    const InitSpec s = parse_init("q1=plus, q2=true,bell(q3,q4)", kNames);
    CHECK(s.presets[0] == Preset::Plus);
    CHECK(s.presets[1] == Preset::True);
    CHECK_FALSE(s.presets[2].has_value());
    REQUIRE(s.bell_pairs.size() == 1);
    CHECK(s.bell_pairs[0] == std::pair<std::size_t, std::size_t>{2, 3});
    CHECK(format_init(s, kNames) == "q1=plus,q2=true,bell(q3,q4)");
    CHECK(parse_init("state.json", kNames).file == "state.json");

    CHECK(init_error("q1=plus,q2=true,q3=true") == ErrorCode::MalformedInit);
    CHECK(init_error("q1=plus,q1=true,q3=true,q4=true") == ErrorCode::MalformedInit);
    CHECK(init_error("q1=up,q2=true,q3=true,q4=true") == ErrorCode::MalformedInit);
    CHECK(init_error("q1=plus,q2=true,bell(q3,q3),q4=true") == ErrorCode::MalformedInit);
    CHECK(init_error("q1=plus,q5=true,bell(q3,q4),q2=true") == ErrorCode::MalformedInit);
    CHECK(init_error("bell(q1,q2),bell(q2,q3),q4=true") == ErrorCode::MalformedInit);
    CHECK(init_error("q1,q2,q3,q4") == ErrorCode::MalformedInit);
}

TEST_CASE("init ensembles match the preset densities") {
    const InitSpec s = parse_init("q1=tstate,q2=mixed,bell(q4,q3)", kNames);
    const PureEnsemble e = init_ensemble(s, kNames);
    const double h = 1.0 / std::sqrt(2.0);
    const CMatrix bell = CMatrix::outer(std::vector<Complex>{h, 0, 0, h});
    const CMatrix want = oracle::kron_all({preset_density(Preset::TState), preset_density(Preset::Mixed), bell});
    CHECK(approx_eq(mixture(e).matrix, want, 1e-12));
    const AbstractElement a = derive_abstract(s, kNames);
    CHECK(a.partition == Partition::from_blocks(4, {{2, 3}}));
    CHECK(a.basis == BasisMap{Flag::Top, Flag::Bot, Flag::Top, Flag::Top});
    CHECK(in_sigma(e, a));
}

TEST_CASE("derived abstract elements satisfy the precondition") {
    Rng rng(61);
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 1 + rng.below(4);
        std::vector<std::string> names;
        for (std::size_t q = 0; q < n; ++q) names.push_back("q" + std::to_string(q + 1));
        const InitSpec s = random_init(rng, n, 0.4);
        CAPTURE(format_init(s, names));
        CHECK(in_sigma(init_ensemble(s, names), derive_abstract(s, names)));
    }
}

TEST_CASE("state files") {
    const std::vector<std::string> names{"a", "b"};
    const std::string m = temp_file("m.json", R"({"qubits":["a","b"],"matrix":[[[0.5,0],[0,0],[0,0],[0.5,0]],
        [[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0.5,0],[0,0],[0,0],[0.5,0]]]})");
    const PureEnsemble bell = load_state_file(m, names);
    CHECK(trace(mixture(bell).matrix).real() == doctest::Approx(1.0));
    const AbstractElement a = derive_abstract(parse_init(m, names), names);
    CHECK(a.partition == Partition::whole(2));
    CHECK(a.basis == BasisMap{Flag::Top, Flag::Top});

    const std::string b = temp_file("b.json", R"({"qubits":["a","b"],"branches":[
        {"weight":0.5,"amplitudes":[[1,0],[0,0],[0,0],[0,0]]},
        {"weight":0.5,"amplitudes":[[0,0],[0,0],[0,0],[1,0]]}]})");
    const AbstractElement c = derive_abstract(parse_init(b, names), names);
    CHECK(c.partition == Partition(2));
    CHECK(c.basis == BasisMap{Flag::S, Flag::S});

    const std::string bad = temp_file("bad.json", R"({"qubits":["a","b"],"matrix":[[[1,0]]]})");
    CHECK_THROWS_AS(load_state_file(bad, names), Error);
    const std::string wrong = temp_file("wrong.json", R"({"qubits":["x","y"],"branches":[]})");
    CHECK_THROWS_AS(load_state_file(wrong, names), Error);
    CHECK_THROWS_AS(load_state_file("qent_test_missing.json", names), Error);
    for (const auto& f : {m, b, bad, wrong}) std::remove(f.c_str());
}
