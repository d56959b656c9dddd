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

#include "qent/init.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "qent/random.hpp"
#include "qent/soundness.hpp"

namespace qent {

using nlohmann::json;

const char* to_string(Preset p) {
    switch (p) {
    case Preset::True: return "true";
    case Preset::False: return "false";
    case Preset::Plus: return "plus";
    case Preset::Minus: return "minus";
    case Preset::Mixed: return "mixed";
    case Preset::TState: return "tstate";
    }
    return "?";
}

namespace {

Preset parse_preset(std::string_view text) {
    for (Preset p : {Preset::True, Preset::False, Preset::Plus, Preset::Minus, Preset::Mixed,
                     Preset::TState})
        if (text == to_string(p)) return p;
    throw Error(ErrorCode::MalformedInit, "unknown preset '" + std::string(text) + "'");
}

// Amplitudes of a pure preset; Mixed maps to the |0> placeholder.
std::array<Complex, 2> preset_vector(Preset p) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (p) {
    case Preset::True: return {1.0, 0.0};
    case Preset::False: return {0.0, 1.0};
    case Preset::Plus: return {s, s};
    case Preset::Minus: return {s, -s};
    case Preset::TState: return {s, s * std::polar(1.0, M_PI / 4.0)};
    case Preset::Mixed: return {1.0, 0.0};
    }
    return {1.0, 0.0};
}

CMatrix bell_density() {
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<Complex> v{s, 0.0, 0.0, s};
    return CMatrix::outer(v);
}

std::size_t lookup(std::string_view name, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    throw Error(ErrorCode::MalformedInit, "unknown qubit '" + std::string(name) + "' in init");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Complex parse_complex(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2)
        throw Error(ErrorCode::MalformedInit, "complex entries must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

CMatrix preset_density(Preset p) {
    if (p == Preset::Mixed) return (gates::P_true() + gates::P_false()) * 0.5;
    const auto v = preset_vector(p);
    return CMatrix::outer(v);
}

InitSpec default_init(std::size_t n) {
    InitSpec spec;
    spec.presets.assign(n, Preset::True);
    return spec;
}

InitSpec parse_init(std::string_view text, const std::vector<std::string>& names) {
    InitSpec spec;
    text = trim(text);
    if (text.size() > 5 && text.substr(text.size() - 5) == ".json") {
        spec.file = std::string(text);
        return spec;
    }
    spec.presets.assign(names.size(), std::nullopt);
    std::vector<bool> covered(names.size(), false);
    auto cover = [&](std::size_t q) {
        if (covered[q]) throw Error(ErrorCode::MalformedInit, "qubit '" + names[q] + "' initialised twice");
        covered[q] = true;
    };

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = pos;
        int depth = 0;
        while (end < text.size() && (depth > 0 || text[end] != ',')) {
            if (text[end] == '(') ++depth;
            if (text[end] == ')') --depth;
            ++end;
        }
        std::string_view item = trim(text.substr(pos, end - pos));
        pos = end + 1;
        if (item.empty()) continue;
        if (item.starts_with("bell(")) {
            if (item.back() != ')') throw Error(ErrorCode::MalformedInit, "malformed bell(...) directive");
            std::string_view args = item.substr(5, item.size() - 6);
            const std::size_t comma = args.find(',');
            if (comma == std::string_view::npos)
                throw Error(ErrorCode::MalformedInit, "bell(...) needs two qubits");
            const std::size_t a = lookup(trim(args.substr(0, comma)), names);
            const std::size_t b = lookup(trim(args.substr(comma + 1)), names);
            if (a == b) throw Error(ErrorCode::MalformedInit, "bell(...) needs two distinct qubits");
            cover(a);
            cover(b);
            spec.bell_pairs.emplace_back(a, b);
            continue;
        }
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::MalformedInit, "expected qubit=preset, got '" + std::string(item) + "'");
        const std::size_t q = lookup(trim(item.substr(0, eq)), names);
        cover(q);
        spec.presets[q] = parse_preset(trim(item.substr(eq + 1)));
    }
    for (std::size_t q = 0; q < names.size(); ++q)
        if (!covered[q]) throw Error(ErrorCode::MalformedInit, "qubit '" + names[q] + "' is not initialised");
    return spec;
}

std::string format_init(const InitSpec& spec, const std::vector<std::string>& names) {
    if (spec.file) return *spec.file;
    std::string out;
    for (std::size_t q = 0; q < spec.presets.size(); ++q) {
        if (!spec.presets[q]) continue;
        if (!out.empty()) out += ',';
        out += names.at(q) + "=" + to_string(*spec.presets[q]);
    }
    for (const auto& [a, b] : spec.bell_pairs) {
        if (!out.empty()) out += ',';
        out += "bell(" + names.at(a) + "," + names.at(b) + ")";
    }
    return out;
}

PureEnsemble init_ensemble(const InitSpec& spec, const std::vector<std::string>& names) {
    if (spec.file) return load_state_file(*spec.file, names);
    const std::size_t n = names.size();
    if (n > 62) throw Error(ErrorCode::CapacityExceeded, "too many qubits");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Complex> psi(dim, 1.0);
    std::uint64_t mixed = 0;
    for (std::size_t q = 0; q < n && q < spec.presets.size(); ++q) {
        if (!spec.presets[q]) continue;
        if (*spec.presets[q] == Preset::Mixed) mixed |= std::uint64_t{1} << q;
        const auto v = preset_vector(*spec.presets[q]);
        for (std::size_t k = 0; k < dim; ++k) psi[k] *= v[qubit_bit(k, q, n)];
    }
    const double s = 1.0 / std::sqrt(2.0);
    for (const auto& [a, b] : spec.bell_pairs)
        for (std::size_t k = 0; k < dim; ++k)
            psi[k] *= qubit_bit(k, a, n) == qubit_bit(k, b, n) ? s : 0.0;
    PureEnsemble e = pure_ensemble(names, std::move(psi));
    e.branches.front().mixed = mixed;
    return e;
}

AbstractElement derive_abstract(const InitSpec& spec, const std::vector<std::string>& names, double tol) {
    const std::size_t n = names.size();
    if (spec.file) {
        const PureEnsemble e = load_state_file(*spec.file, names);
        AbstractElement a{beta(mixture(e).matrix, tol), Partition(n)};
        if (!in_sigma(e, a, tol)) a.partition = Partition::whole(n);
        return a;
    }
    AbstractElement a = AbstractElement::bottom(n);
    for (std::size_t q = 0; q < n && q < spec.presets.size(); ++q)
        if (spec.presets[q]) a.basis[q] = beta(preset_density(*spec.presets[q]), tol)[0];
    const BasisMap bell = beta(bell_density(), tol);
    std::vector<std::vector<std::size_t>> blocks;
    for (const auto& [x, y] : spec.bell_pairs) {
        a.basis[x] = bell[0];
        a.basis[y] = bell[1];
        blocks.push_back({x, y});
    }
    a.partition = Partition::from_blocks(n, blocks);
    return a;
}

InitSpec random_init(Rng& rng, std::size_t n, double bell_chance) {
    static constexpr Preset all[] = {Preset::True,  Preset::False, Preset::Plus,
                                     Preset::Minus, Preset::Mixed, Preset::TState};
    InitSpec spec;
    spec.presets.assign(n, std::nullopt);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::size_t i = 0;
    while (i < n) {
        if (i + 1 < n && rng.chance(bell_chance)) {
            spec.bell_pairs.emplace_back(order[i], order[i + 1]);
            i += 2;
        } else {
            spec.presets[order[i]] = all[rng.below(6)];
            ++i;
        }
    }
    return spec;
}

PureEnsemble load_state_file(const std::string& path, const std::vector<std::string>& names) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open state file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInit, std::string("state file: ") + e.what());
    }
    try {
        if (j.contains("qubits") && j["qubits"].get<std::vector<std::string>>() != names)
            throw Error(ErrorCode::MalformedInit, "state file qubits do not match the program");
        const std::size_t dim = std::size_t{1} << names.size();
        if (j.contains("branches")) {
            PureEnsemble e;
            e.qubits = names;
            for (const auto& b : j["branches"]) {
                PureBranch branch;
                branch.weight = b.value("weight", 1.0);
                for (const auto& a : b.at("amplitudes")) branch.amplitudes.push_back(parse_complex(a));
                if (branch.amplitudes.size() != dim)
                    throw Error(ErrorCode::MalformedInit, "branch has the wrong number of amplitudes");
                double norm2 = 0.0;
                for (const auto& a : branch.amplitudes) norm2 += std::norm(a);
                if (norm2 <= 0.0) throw Error(ErrorCode::MalformedInit, "zero branch vector");
                for (auto& a : branch.amplitudes) a /= std::sqrt(norm2);
                e.branches.push_back(std::move(branch));
            }
            return e;
        }
        const auto& rows = j.at("matrix");
        if (rows.size() != dim) throw Error(ErrorCode::MalformedInit, "matrix has the wrong dimension");
        CMatrix m(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            if (rows[r].size() != dim) throw Error(ErrorCode::MalformedInit, "matrix must be square");
            for (std::size_t c = 0; c < dim; ++c) m(r, c) = parse_complex(rows[r][c]);
        }
        if (!is_density(m)) throw Error(ErrorCode::MalformedInit, "matrix is not a density matrix");
        return ensemble_from_density({names, m});
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInit, std::string("state file: ") + e.what());
    }
}

}  // namespace qent
