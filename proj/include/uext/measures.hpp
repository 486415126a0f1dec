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

#include <optional>
#include <string>

#include "uext/conic/builders.hpp"
#include "uext/divergences.hpp"
#include "uext/frank_wolfe.hpp"

namespace uext::measures {

struct Diagnostics {
  std::string status;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;       // duality gap (SDP) or Frank-Wolfe gap
  double dual_value = 0.0;  // objective of the dual builder, if solved
  bool converged = false;
};

struct MeasureResult {
  double value = 0.0;  // bits, except unext_fidelity
  bool infinite = false;
  double raw = 0.0;  // optimum of the underlying program
  std::optional<Matrix> optimal_extension;  // on the original A B B'
  std::optional<Matrix> dual_certificate;
  Diagnostics diagnostics;
};

struct Options {
  conic::SolverOptions solver;
  bool solve_dual = false;  // also solve the dual builder and record its value
  fw::Options fw;
  bool faithfulness_check = true;  // try the two-extendibility SDP first
  double eps_reg = 1e-12;
};

/// Accepts optimal solutions, and max-iteration solutions whose residuals and
/// relative gap are within 1e3 times the requested tolerances.
bool acceptable(const conic::ConicSolution<Complex>& sol, const conic::SolverOptions& opts);

MeasureResult e_max_u(const states::BipartiteState& rho, const Options& opts = {});
MeasureResult e_min_u(const states::BipartiteState& rho, const Options& opts = {});
/// value = F^u in [0, 1].
MeasureResult unext_fidelity(const states::BipartiteState& rho, const Options& opts = {});
/// -log2 F^u.
double sandwiched_half_u(const MeasureResult& fidelity);

MeasureResult e_rel_u(const states::BipartiteState& rho, const Options& opts = {});
/// alpha in (0, 1) u (1, 2]; alpha == 1 calls e_rel_u.
MeasureResult petz_alpha_u(const states::BipartiteState& rho, double alpha,
                           const Options& opts = {});

/// Closed forms for pure states: Petz H_gamma, sandwiched H_beta, geometric
/// H_0, max (sandwiched at inf) H_min, min H_min, relative entropy H.
double pure_state_measures(const states::BipartiteState& psi, div::Family family, double alpha);

struct ExtendibilityCheck {
  bool extendible = false;
  conic::Verdict verdict = conic::Verdict::Indeterminate;
  std::optional<Matrix> certificate;
  double residual = 0.0;
};

ExtendibilityCheck is_two_extendible(const states::BipartiteState& rho, const Options& opts = {});

}  // namespace uext::measures
