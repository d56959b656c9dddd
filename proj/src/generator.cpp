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

#include <array>

#include "qent/random.hpp"
#include "qent/soundness.hpp"

namespace qent {

namespace {

enum Ctor { kSkip, kSeq, kIf, kWhile, kH, kT, kPauli, kCNot };

class Generator {
  public:
    Generator(std::uint64_t seed, const GeneratorConfig& cfg, std::size_t n)
        : rng_(seed), cfg_(cfg), n_(n), budget_(cfg.max_measurements) {}

    CommandPtr command(std::size_t depth) {
        std::array<double, 8> w{cfg_.w_skip, cfg_.w_seq, cfg_.w_if,    cfg_.w_while,
                                cfg_.w_h,    cfg_.w_t,   cfg_.w_pauli, cfg_.w_cnot};
        if (depth <= 1) w[kSeq] = w[kIf] = w[kWhile] = 0.0;
        if (budget_ == 0) w[kIf] = w[kWhile] = 0.0;
        if (n_ < 2) w[kCNot] = 0.0;
        bool any = false;
        for (double x : w) any = any || x > 0.0;
        if (!any) return ast::skip();

        switch (rng_.pick(w)) {
        case kSeq: {
            CommandPtr first = command(depth - 1);
            return ast::seq(first, command(depth - 1));
        }
        case kIf: {
            --budget_;
            std::string q = qubit();
            CommandPtr a = command(depth - 1);
            return ast::if_(q, a, command(depth - 1));
        }
        case kWhile: {
            --budget_;
            std::string q = qubit();
            if (depth < 3) return ast::while_(q, ast::h(q));
            return ast::while_(q, ast::seq(command(depth - 2), ast::h(q)));
        }
        case kH: return ast::h(qubit());
        case kT: return ast::t(qubit());
        case kPauli: {
            static constexpr GateKind paulis[] = {GateKind::X, GateKind::Y, GateKind::Z};
            return ast::gate(paulis[rng_.below(3)], qubit());
        }
        case kCNot: {
            const std::size_t c = rng_.below(n_);
            std::size_t t = rng_.below(n_ - 1);
            if (t >= c) ++t;
            return ast::cnot(name(c), name(t));
        }
        default: return ast::skip();
        }
    }

    static std::string name(std::size_t i) { return "q" + std::to_string(i + 1); }

  private:
    std::string qubit() { return name(rng_.below(n_)); }

    Rng rng_;
    const GeneratorConfig& cfg_;
    std::size_t n_;
    std::size_t budget_;
};

}  // namespace

Program generate_program(std::uint64_t seed, const GeneratorConfig& config) {
    Rng sizer(seed ^ 0x9e3779b97f4a7c15ull);
    const std::size_t lo = std::max<std::size_t>(1, std::min(config.min_qubits, config.max_qubits));
    const std::size_t hi = std::max(lo, config.max_qubits);
    const std::size_t n = lo + sizer.below(hi - lo + 1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(Generator::name(i));
    Generator gen(seed, config, n);
    return Program::make(names, gen.command(std::max<std::size_t>(1, config.max_depth)));
}

}  // namespace qent
