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

#include <cstdint>

#include "uext/states.hpp"

namespace uext::oracle {

struct SeparableFit {
  double value = 0.0;  // bits; an upper bound on the relative entropy of entanglement
  Matrix sigma;
  int iterations = 0;
};

/// min D(rho || sum_k |a_k b_k><a_k b_k| / norm) over `terms` unnormalized
/// product vectors, by gradient descent from random starts.
SeparableFit separable_ree(const states::BipartiteState& rho, int terms, int starts,
                           std::uint64_t seed, int max_iterations = 4000);

}  // namespace uext::oracle
