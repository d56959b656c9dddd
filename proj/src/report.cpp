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

#include "qent/report.hpp"

#include <cmath>
#include <cstdio>

namespace qent::report {

namespace {

// Print -0 and 1e-17 noise as 0 so dumps are stable across platforms.
double clean(double x) { return std::abs(x) < 1e-15 ? 0.0 : x; }

}  // namespace

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) row.push_back({clean(m(r, c).real()), clean(m(r, c).imag())});
        rows.push_back(std::move(row));
    }
    return rows;
}

json flags_json(const BasisMap& b, const std::vector<std::string>& names) {
    json out = json::object();
    for (std::size_t q = 0; q < b.size(); ++q) out[names.at(q)] = to_string(b[q]);
    return out;
}

json blocks_json(const Partition& p, const std::vector<std::string>& names) {
    json out = json::array();
    for (const auto& block : p.blocks()) {
        json members = json::array();
        for (auto q : block) members.push_back(names.at(q));
        out.push_back(std::move(members));
    }
    return out;
}

json element_json(const AbstractElement& a, const std::vector<std::string>& names) {
    return {{"flags", flags_json(a.basis, names)}, {"blocks", blocks_json(a.partition, names)}};
}

json state_json(const DensityState& s) {
    return {{"qubits", s.qubits}, {"trace", clean(trace(s.matrix).real())}, {"matrix", matrix_json(s.matrix)}};
}

json ensemble_json(const PureEnsemble& e) {
    const std::size_t n = e.qubits.size();
    json branches = json::array();
    for (const auto& b : e.branches) {
        json amps = json::array();
        for (const auto& a : b.amplitudes) amps.push_back({clean(a.real()), clean(a.imag())});
        json mixed = json::array();
        for (std::size_t q = 0; q < n; ++q)
            if (b.is_mixed(q)) mixed.push_back(e.qubits[q]);
        json path = json::array();
        for (char c : b.path) {
            if (c == 't') path.push_back(true);
            else if (c == 'f') path.push_back(false);
        }
        branches.push_back({{"weight", b.weight}, {"path", path}, {"splits", b.path}, {"mixed", mixed},
                            {"amplitudes", amps}});
    }
    return {{"qubits", e.qubits}, {"branches", branches}, {"residual", e.residual},
            {"nonterminating", e.nonterminating}};
}

json soundness_json(const SoundnessReport& r) {
    json out{{"verdict", to_string(r.verdict)},
             {"beta_ok", r.beta_ok},
             {"beta", r.beta.empty() ? json::object() : flags_json(r.beta, r.qubits)},
             {"claimed_flags", r.claimed.basis.empty() ? json::object() : flags_json(r.claimed.basis, r.qubits)},
             {"claimed_blocks", r.claimed.basis.empty() ? json::array() : blocks_json(r.claimed.partition, r.qubits)},
             {"witness", to_string(r.witness)},
             {"residual", r.residual},
             {"seed", r.seed},
             {"program", r.program}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

std::string matrix_text(const CMatrix& m, int precision) {
    std::string out;
    char buf[64];
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            const Complex z = m(r, c);
            std::snprintf(buf, sizeof buf, "%s%+.*f%+.*fi", c ? "  " : "", precision, clean(z.real()), precision,
                          clean(z.imag()));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace qent::report
