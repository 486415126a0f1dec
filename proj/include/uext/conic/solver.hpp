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

#include "uext/conic/problem.hpp"

namespace uext::conic {

class ConicBackend;

struct SolverOptions {
  double gap_tol = 1e-8;   // relative duality gap
  double feas_tol = 1e-8;  // relative primal / dual residuals
  int max_iterations = 100;
  bool embed_real = true;  // complex problems go through the real embedding
  bool parallel = true;    // OpenMP Schur assembly
  bool presolve = true;
  bool verbose = false;    // per-iteration log on stderr
  const ConicBackend* backend = nullptr;  // null: built-in interior point
};

/// Adapter for an alternative real conic solver.
class ConicBackend {
 public:
  virtual ~ConicBackend() = default;
  virtual std::string name() const = 0;
  virtual ConicSolution<double> solve(const ConicProblem<double>& p,
                                      const SolverOptions& opts) const = 0;
};

/// Homogeneous self-dual interior-point method with Nesterov-Todd scaling and
/// Mehrotra predictor-corrector steps. Infeasibility is reported from the
/// embedding's certificates: for Status::Infeasible the returned y (natural
/// X side) or X (natural y side) is a normalized Farkas certificate.
template <class Scalar>
ConicSolution<Scalar> solve_interior_point(const ConicProblem<Scalar>& p,
                                           const SolverOptions& opts = {});

ConicSolution<double> solve(const ConicProblem<double>& p, const SolverOptions& opts = {});

/// Solves through the real embedding (default) or directly in complex
/// arithmetic when opts.embed_real is false.
ConicSolution<Complex> solve(const ConicProblem<Complex>& p, const SolverOptions& opts = {});

}  // namespace uext::conic
