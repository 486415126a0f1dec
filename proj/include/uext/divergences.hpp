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
#include <limits>
#include <string>

#include "uext/linalg.hpp"
#include "uext/states.hpp"

namespace uext::div {

using linalg::HermitianOperator;

enum class Family { Petz, Sandwiched, Geometric, Max, Min, RelEnt, BS };

std::string to_string(Family f);

/// A divergence in bits. `infinite` marks +infinity; `value` is then +inf too.
struct DivergenceValue {
  double value = 0.0;
  bool infinite = false;
  double alpha = 1.0;
  Family family = Family::RelEnt;

  static DivergenceValue inf(double alpha, Family f) {
    return {std::numeric_limits<double>::infinity(), true, alpha, f};
  }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Every divergence takes positive semidefinite arguments; powers, logs and
// inverses are taken on supports.

/// (1/(a-1)) log2 tr[w^a t^(1-a)]. alpha == 1 gives relative_entropy.
DivergenceValue petz_renyi(const HermitianOperator& omega, const HermitianOperator& tau,
                           double alpha);

/// (1/(a-1)) log2 tr[(t^((1-a)/2a) w t^((1-a)/2a))^a]; alpha == inf gives D_max.
DivergenceValue sandwiched_renyi(const HermitianOperator& omega, const HermitianOperator& tau,
                                 double alpha);

/// (1/(a-1)) log2 tr[t (t^(-1/2) w t^(-1/2))^a] for a in (0,1) u (1,2].
/// alpha == 1 gives the Belavkin-Staszewski relative entropy.
DivergenceValue geometric_renyi(const HermitianOperator& omega, const HermitianOperator& tau,
                                double alpha);

DivergenceValue relative_entropy(const HermitianOperator& omega, const HermitianOperator& tau);
DivergenceValue bs_relative_entropy(const HermitianOperator& omega, const HermitianOperator& tau);
DivergenceValue max_relative_entropy(const HermitianOperator& omega, const HermitianOperator& tau);
DivergenceValue min_relative_entropy(const HermitianOperator& omega, const HermitianOperator& tau);

/// Dispatch on family; alpha is ignored for Max, Min, RelEnt and BS.
DivergenceValue divergence(Family f, const HermitianOperator& omega, const HermitianOperator& tau,
                           double alpha);

/// Renyi entropy in bits; alpha = 0 (log rank), 1 (von Neumann), inf (min-entropy).
double renyi_entropy(const HermitianOperator& rho, double alpha);
double renyi_entropy(const RealVector& spectrum, double alpha);

/// Schmidt coefficients (descending) of a pure bipartite state.
RealVector schmidt_coefficients(const states::BipartiteState& psi);

/// 2 H_gamma(psi_A) with gamma = (2 - alpha) / alpha.
double petz_mi_closed_form(const states::BipartiteState& psi, double alpha);
/// 2 H_beta(psi_A) with beta = 1 / (2 alpha - 1).
double sandwiched_mi_closed_form(const states::BipartiteState& psi, double alpha);
/// 2 H_0(psi_A); spectrum entries below `floor` do not count toward the rank.
double geometric_mi_closed_form(const states::BipartiteState& psi, double floor = 1e-6);

struct BruteMiResult {
  double value = kInf;
  HermitianOperator sigma_b;
  int evaluations = 0;
  bool converged = false;
};

/// min over states s_B of D(psi_AB || psi_A (x) s_B) by multi-start gradient
/// descent with Armijo backtracking on a Cholesky-style parameterization.
BruteMiResult brute_mi(const states::BipartiteState& psi, Family family, double alpha,
                       std::uint64_t seed = 1, int starts = 8);

}  // namespace uext::div
