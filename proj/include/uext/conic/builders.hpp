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

#include <memory>
#include <optional>

#include "uext/conic/extension.hpp"
#include "uext/conic/problem.hpp"
#include "uext/conic/solver.hpp"

namespace uext::conic {

/// A conic problem over the extension set together with the bookkeeping
/// needed to read solutions back. Variable groups index into y.
struct BuiltProgram {
  ConicProblem<Complex> problem;
  std::shared_ptr<const ExtensionProgram> ext;
  int sigma_block = -1;  // block holding s (X side), if any
  struct Group {
    int offset = 0;
    int count = 0;
    int dim = 0;  // Hermitian coordinates of a dim x dim matrix
  };
  Group group_y, group_x, group_z;  // meaning depends on the builder
};

/// maximize lambda s.t. lambda rho <= tr_B sigma, tr_B' sigma = rho, sigma >= 0.
/// Optimum 2^(-2 E_max^u).
BuiltProgram build_emax(std::shared_ptr<const ExtensionProgram> ext);
/// minimize tr[rho Y] s.t. tr[rho X] >= 1, X_AB' (x) 1_B <= Y_AB (x) 1_B', X >= 0.
/// Groups: y -> Y, x -> X.
BuiltProgram build_emax_dual(std::shared_ptr<const ExtensionProgram> ext);

/// maximize tr[Pi_rho tr_B sigma] over extensions. Optimum 2^(-2 E_min^u).
BuiltProgram build_emin(std::shared_ptr<const ExtensionProgram> ext);
/// minimize tr[rho Y] s.t. Y_AB (x) 1_B' >= Pi_AB' (x) 1_B. Group y -> Y.
BuiltProgram build_emin_dual(std::shared_ptr<const ExtensionProgram> ext);

/// maximize Re tr X s.t. [[rho, X], [X^dagger, tr_B sigma]] >= 0 over
/// extensions. Optimum F^u.
BuiltProgram build_fidelity(std::shared_ptr<const ExtensionProgram> ext);
/// minimize (tr[W rho] + tr[Z rho]) / 2 s.t. [[W, -1], [-1, Y]] >= 0 and
/// Z_AB (x) 1_B' >= Y_AB' (x) 1_B. Groups: x -> W, y -> Y, z -> Z.
BuiltProgram build_fidelity_dual(std::shared_ptr<const ExtensionProgram> ext);

/// Feasibility of tr_B' sigma = rho and tr_B sigma = rho (objective 0).
BuiltProgram build_two_extendible(std::shared_ptr<const ExtensionProgram> ext);

/// maximize <F0, s> over extensions; F0 is set with set_linear_objective.
BuiltProgram build_linear(std::shared_ptr<const ExtensionProgram> ext);
/// Makes the objective of a build_linear program "minimize tr[G tr_B sigma]"
/// (stored as maximize -<Phi^dagger(G), s>). G acts on compressed A B'.
void set_linear_objective(BuiltProgram& prog, const Matrix& g);

/// sqrt(tr[rho Y^-1] tr[rho Z]) for a feasible (Y, Z) of build_fidelity_dual,
/// i.e. the objective after optimally rescaling (Y, Z) -> (tY, tZ).
double fidelity_dual_equalized(const BuiltProgram& prog, const ConicSolution<Complex>& sol);

enum class Verdict { Feasible, Infeasible, Indeterminate };

struct ExtendibilityResult {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<Matrix> extension;  // on the original A B B'
  double residual = 0.0;            // max entrywise marginal mismatch
  ConicSolution<Complex> solution;
};

ExtendibilityResult two_extendible_feasibility(const states::BipartiteState& rho,
                                               const SolverOptions& opts = {});

/// Reads s from a solution of an X-side builder.
Matrix sigma_of(const BuiltProgram& prog, const ConicSolution<Complex>& sol);

/// Hermitian matrix of a y group.
Matrix group_matrix(const BuiltProgram::Group& g, const Eigen::VectorXd& y);

}  // namespace uext::conic
