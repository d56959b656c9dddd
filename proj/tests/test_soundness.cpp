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

#include <set>

#include "oracles.hpp"
#include "qent/init.hpp"
#include "qent/soundness.hpp"

using namespace qent;

namespace {

const char* kTeleport = R"(qubits q1, q2, q3;
H(q2); CNot(q2, q3); CNot(q1, q2); H(q1);
if q1 then { if q2 then { skip } else { X(q3) } }
else { if q2 then { Z(q3) } else { Y(q3) } })";

CMatrix hadamard_conj(const CMatrix& m) { return gates::H() * m * gates::H(); }

std::vector<Complex> bell() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, 0.0, 0.0, s};
}

PureEnsemble from_spec(const char* text, const std::vector<std::string>& names) {
    return init_ensemble(parse_init(text, names), names);
}

}  // namespace

TEST_CASE("beta of the named one-qubit states") {
    const CMatrix mixed = (gates::P_true() + gates::P_false()) * 0.5;
    const CMatrix t_state = gates::T() * hadamard_conj(gates::P_true()) * gates::T().adjoint();
    CHECK(beta(mixed) == BasisMap{Flag::Bot});
    CHECK(beta(gates::P_true()) == BasisMap{Flag::S});
    CHECK(beta(gates::P_false()) == BasisMap{Flag::S});
    CHECK(beta(hadamard_conj(gates::P_true())) == BasisMap{Flag::D});
    CHECK(beta(t_state) == BasisMap{Flag::Top});
    CHECK(beta(CMatrix::zero(2)) == BasisMap{Flag::Bot});
}

TEST_CASE("beta agrees with the projector oracle") {
    Rng rng(51);
    const Preset presets[] = {Preset::True, Preset::False, Preset::Plus, Preset::Minus, Preset::Mixed, Preset::TState};
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = 1 + rng.below(3);
        std::vector<CMatrix> f;
        for (std::size_t q = 0; q < n; ++q) f.push_back(preset_density(presets[rng.below(6)]));
        CMatrix rho = oracle::kron_all(f);
        // Entangle or mix now and then.
        if (n >= 2 && rng.chance(0.5)) rho = oracle::conj(oracle::lift_cnot(0, n - 1, n), rho);
        if (rng.chance(0.3)) rho = rho * 0.5 + oracle::kron_all(std::vector<CMatrix>(n, preset_density(presets[rng.below(6)]))) * 0.5;
        CHECK(beta(rho) == oracle::beta(rho));
    }
    for (int k = 0; k < 50; ++k) {
        const CMatrix rho = oracle::random_density(rng, 2);
        CHECK(beta(rho) == oracle::beta(rho));
    }
}

TEST_CASE("pure block separability") {
    const std::vector<Complex> product = [] {
        const double s = 1.0 / std::sqrt(2.0);
        return std::vector<Complex>{s, s, 0, 0, 0, 0, 0, 0};  // true (x) true (x) plus
    }();
    CHECK(pure_block_separable({product, 1.0, "", 0}, Partition(3)));
    CHECK_FALSE(pure_block_separable({bell(), 1.0, "", 0}, Partition(2)));
    CHECK(pure_block_separable({bell(), 1.0, "", 0}, Partition::whole(2)));
}

TEST_CASE("witnesses") {
    PureEnsemble empty;
    empty.qubits = {"a", "b"};
    const auto v0 = witness_separability(empty, Partition(2));
    CHECK(v0.kind == WitnessKind::Witnessed);
    CHECK(v0.decomposition.empty());

    const auto bell_ens = pure_ensemble({"a", "b"}, bell());
    const auto v1 = witness_separability(bell_ens, Partition(2));
    CHECK(v1.kind == WitnessKind::Inconclusive);
    CHECK(v1.failing_branch == 0u);

    const Program p = parse(kTeleport);
    Rng rng(52);
    const auto psi = oracle::random_vector(rng, 1);
    std::vector<Complex> v(8);
    v[0] = psi[0];
    v[4] = psi[1];
    const PureEnsemble out = eval_ensemble(p, pure_ensemble(p.names(), v));
    const auto w = witness_separability(out, Partition(3));
    REQUIRE(w.kind == WitnessKind::Witnessed);
    CHECK(w.decomposition.size() == 4);
    CHECK(approx_eq(reassemble(w.decomposition, 3), mixture(out).matrix, 1e-7));
}

TEST_CASE("witness reassembly with mixed qubits") {
    const std::vector<std::string> names{"a", "b", "c"};
    const PureEnsemble e = from_spec("a=mixed,b=tstate,c=minus", names);
    const auto w = witness_separability(e, Partition(3));
    REQUIRE(w.kind == WitnessKind::Witnessed);
    CHECK(approx_eq(reassemble(w.decomposition, 3), mixture(e).matrix, 1e-12));
}

TEST_CASE("soundness golden checks") {
    const Program tele = parse(kTeleport);
    const PureEnsemble in = from_spec("q1=tstate,q2=true,q3=true", tele.names());
    const SoundnessReport r = check_sound(tele, in, {{Flag::Top, Flag::S, Flag::S}, Partition(3)});
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.beta_ok);
    CHECK(r.beta[0] != Flag::Top);
    CHECK(r.claimed.basis == BasisMap{Flag::S, Flag::S, Flag::Top});

    const Program trap = parse("qubits q1, q2; CNot(q1, q2); CNot(q1, q2)");
    const SoundnessReport t =
        check_sound(trap, from_spec("q1=plus,q2=true", trap.names()), {{Flag::D, Flag::S}, Partition(2)});
    CHECK(t.verdict == Verdict::Pass);
    CHECK(t.claimed.partition == Partition::whole(2));
    CHECK(t.witness == WitnessKind::Witnessed);
}

TEST_CASE("precondition is enforced") {
    const Program p = parse("qubits a, b; skip");
    const PureEnsemble in = pure_ensemble(p.names(), bell());
    CHECK_THROWS_AS(check_sound(p, in, {{Flag::Top, Flag::Top}, Partition(2)}), Error);
    CHECK(check_sound(p, in, AbstractElement::top(2)).verdict == Verdict::Pass);
}

TEST_CASE("sigma rejects separability claims on an entangled output") {
    const Program p = parse("qubits a, b; H(a); CNot(a, b)");
    const PureEnsemble in = from_spec("a=true,b=true", p.names());
    const SoundnessReport r = check_sound(p, in, {{Flag::S, Flag::S}, Partition(2)});
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.claimed.partition == Partition::whole(2));
    const PureEnsemble out = eval_ensemble(p, in);
    CHECK_FALSE(in_sigma(out, {{Flag::Top, Flag::Top}, Partition(2)}));
    CHECK(in_sigma(out, AbstractElement::top(2)));
}

TEST_CASE("branch explosion is inconclusive") {
    const Program p = parse("qubits a, b; H(a); H(b); if a then { skip } else { skip }; if b then { skip } else { skip }");
    LoopConfig cfg;
    cfg.branch_cap = 2;
    const SoundnessReport r = check_sound(p, from_spec("a=true,b=true", p.names()), {{Flag::S, Flag::S}, Partition(2)}, cfg);
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("sigma convexity examples") {
    const std::vector<std::string> names{"a", "b"};
    const auto e1 = from_spec("a=true,b=plus", names);
    const auto e2 = from_spec("a=minus,b=false", names);
    const AbstractElement a1{{Flag::S, Flag::D}, Partition(2)}, a2{{Flag::D, Flag::S}, Partition(2)};
    auto half = [](PureEnsemble e) {
        for (auto& b : e.branches) b.weight *= 0.5;
        return e;
    };
    CHECK(sigma_convexity_check(half(e1), a1, half(e2), a2));
    CHECK(sigma_convexity_check(half(e1), a1, half(e1), a1));
    const auto bell_half = half(pure_ensemble(names, bell()));
    CHECK(sigma_convexity_check(bell_half, AbstractElement::top(2), half(e1), a1));
    CHECK_THROWS_AS(sigma_convexity_check(e1, a1, e2, a2), Error);  // trace 2
}

TEST_CASE("generator") {
    CHECK(generate_program(5) == generate_program(5));
    GeneratorConfig leaf;
    leaf.max_depth = 1;
    std::set<std::string> leaves;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const Program p = generate_program(seed, leaf);
        CHECK(count_nodes(*p.body) == 1);
        const std::string d = describe(*p.body);
        leaves.insert(d.substr(0, d.find('(')));
    }
    CHECK(leaves == std::set<std::string>{"skip", "H", "T", "X", "Y", "Z", "CNot"});

    std::set<std::size_t> kinds;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Program p = generate_program(seed);
        CHECK(p.size() >= 2);
        CHECK(p.size() <= 4);
        CHECK(count_measurements(*p.body) <= 8);
        auto walk = [&](auto&& self, const Command& c) -> void {
            kinds.insert(c.node.index());
            if (auto* s = std::get_if<Seq>(&c.node)) {
                self(self, *s->first);
                self(self, *s->second);
            } else if (auto* i = std::get_if<If>(&c.node)) {
                self(self, *i->then_branch);
                self(self, *i->else_branch);
            } else if (auto* w = std::get_if<While>(&c.node)) {
                self(self, *w->body);
            }
        };
        walk(walk, *p.body);
    }
    CHECK(kinds.size() == 6);
}
