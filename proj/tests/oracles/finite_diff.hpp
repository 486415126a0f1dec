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

#include <functional>

#include "uext/linalg.hpp"

namespace uext::oracle {

/// Central difference of f along direction d at x.
inline double directional(const std::function<double(const Matrix&)>& f, const Matrix& x,
                          const Matrix& d, double h = 1e-6) {
  return (f(x + h * d) - f(x - h * d)) / (2.0 * h);
}

}  // namespace uext::oracle
