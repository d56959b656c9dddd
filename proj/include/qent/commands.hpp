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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qent/abstract.hpp"
#include "qent/concrete.hpp"
#include "qent/error.hpp"
#include "qent/soundness.hpp"
#include "qent/syntax.hpp"

namespace qent {

enum ExitCode : int {
    kExitOk = 0,
    kExitError = 1,
    kExitFail = 2,
    kExitInconclusive = 3,
    kExitCapacity = 4,
    kExitNonTermination = 5,
};

struct RunConfig {
    double epsilon = 1e-9;
    std::size_t max_iterations = 1000;
    std::size_t branch_cap = 4096;
    std::size_t max_qubits = kDefaultMaxQubits;
    double tolerance = kDefaultTolerance;
    bool json = false;
    std::uint64_t seed = 7;
    std::size_t cases = 1000;
    bool strict = false;
    bool trace = false;
    bool show_matrix = false;
    bool literal_bottom_cnot = false;

    LoopConfig loop() const { return {epsilon, max_iterations, branch_cap, max_qubits}; }
};

/// How the abstract input is given on the command line.
struct AbstractInit {
    std::optional<std::string> flags;
    std::optional<std::string> blocks;
    bool from_init = false;
};

struct CommandOutput {
    std::string text;
    int exit_code = kExitOk;
};

/// Exit code for an error raised while running `command` ("analyze" maps
/// malformed abstract elements to 2).
int exit_code_for(ErrorCode code, const std::string& command);
int exit_code_for(Verdict v);

CommandOutput cmd_simulate(const Program& p, const std::optional<std::string>& init, const RunConfig& cfg);
CommandOutput cmd_analyze(const Program& p, const AbstractInit& abs, const std::optional<std::string>& init,
                          const RunConfig& cfg);
CommandOutput cmd_check(const Program& p, const std::optional<std::string>& init, const AbstractInit& abs,
                        const RunConfig& cfg);
CommandOutput cmd_fuzz(const RunConfig& cfg);

struct FuzzSummary {
    std::size_t cases = 0;
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t inconclusive = 0;
    /// Reports of every non-PASS case.
    std::vector<SoundnessReport> problems;
};

/// The randomized soundness suite: case i uses program seed `seed + i`, a
/// random preset init and the abstract element derived from it, sometimes
/// coarsened. Loops are capped at 64 iterations.
FuzzSummary run_fuzz(std::uint64_t seed, std::size_t cases, const RunConfig& cfg,
                     const GeneratorConfig& gen = {});
std::string fuzz_summary_line(const FuzzSummary& s);

}  // namespace qent
