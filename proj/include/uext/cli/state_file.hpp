// Copyright 2026 The uext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "uext/states.hpp"

namespace uext::cli {

/// {"dims": {"A": dA, "B": dB}, "matrix": [[[re, im], ...], ...], "label": "..."}
/// Rows are row-major over A (x) B with A the slow index.
struct StateFile {
  int d_a = 0;
  int d_b = 0;
  Matrix matrix;
  std::string label;
};

/// Throws std::invalid_argument on malformed input.
StateFile parse_state(const std::string& text);
std::string serialize_state(const StateFile& f);

StateFile load_state_file(const std::string& path);
void save_state_file(const std::string& path, const StateFile& f);

/// Validates Hermiticity, positivity and unit trace.
states::BipartiteState to_state(const StateFile& f);
StateFile from_state(const states::BipartiteState& rho, const std::string& label = "");

}  // namespace uext::cli
