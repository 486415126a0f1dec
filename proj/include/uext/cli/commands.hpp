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

#include <iosfwd>

namespace uext::cli {

/// Exit codes: 0 success, 1 input error, 2 solver did not converge.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNotConverged = 2;

/// Largest d_A * d_B * d_B accepted for SDP-backed commands.
inline constexpr long kMaxExtensionDim = 4096;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uext::cli
