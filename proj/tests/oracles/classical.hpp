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

#include <cmath>
#include <limits>
#include <vector>

// Divergences of probability vectors in bits. All quantum families reduce to
// these on commuting arguments.
namespace uext::oracle {

inline double classical_renyi(const std::vector<double>& p, const std::vector<double>& q,
                              double alpha) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      if (alpha > 1.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  }
  return std::log2(s) / (alpha - 1.0);
}

inline double classical_kl(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    s += p[i] * std::log2(p[i] / q[i]);
  }
  return s;
}

inline double classical_dmax(const std::vector<double>& p, const std::vector<double>& q) {
  double m = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    m = std::max(m, p[i] / q[i]);
  }
  return std::log2(m);
}

inline double shannon_renyi(const std::vector<double>& p, double alpha) {
  if (alpha == 1.0) {
    double h = 0.0;
    for (double x : p)
      if (x > 0.0) h -= x * std::log2(x);
    return h;
  }
  if (std::isinf(alpha)) {
    double m = 0.0;
    for (double x : p) m = std::max(m, x);
    return -std::log2(m);
  }
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s += std::pow(x, alpha);
  return std::log2(s) / (1.0 - alpha);
}

}  // namespace uext::oracle
