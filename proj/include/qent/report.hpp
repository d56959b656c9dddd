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

#include <json.hpp>
#include <string>
#include <vector>

#include "qent/abstract.hpp"
#include "qent/concrete.hpp"
#include "qent/soundness.hpp"

namespace qent::report {

using nlohmann::json;

/// Rows of [re, im] pairs.
json matrix_json(const CMatrix& m);
json flags_json(const BasisMap& b, const std::vector<std::string>& names);
json blocks_json(const Partition& p, const std::vector<std::string>& names);
json element_json(const AbstractElement& a, const std::vector<std::string>& names);
json state_json(const DensityState& s);
json ensemble_json(const PureEnsemble& e);
json soundness_json(const SoundnessReport& r);

/// Fixed-width rendering of a small matrix, one row per line.
std::string matrix_text(const CMatrix& m, int precision = 4);

}  // namespace qent::report
