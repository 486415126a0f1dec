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
#include <memory>
#include <vector>

#include "uext/conic/builders.hpp"

namespace uext::fw {

/// A smooth convex function of the free state tau = Phi(s) on compressed A B'.
struct Objective {
  std::function<double(const Matrix& tau)> value;
  std::function<Matrix(const Matrix& tau)> gradient;
  /// Converts (value, Frank-Wolfe gap) into an upper bound on the error of
  /// the reported quantity, in the units of `tol`.
  std::function<double(double value, double gap)> error_bound;
};

struct Options {
  double tol = 1e-5;
  int max_iterations = 500;  // linear-minimization calls
  int inner_iterations = 200;
  conic::SolverOptions solver;
};

struct Result {
  double value = 0.0;        // objective at the returned point
  double gap = 0.0;          // last Frank-Wolfe gap
  double error_bound = 0.0;  // error_bound(value, gap)
  Matrix tau;                // Phi(s), compressed coordinates
  Matrix s;                  // reduced extension variable
  int iterations = 0;
  int lmo_calls = 0;
  int atoms = 0;
  bool converged = false;
};

/// Minimizes obj over the extension set. Fully corrective variant: after each
/// linear-minimization step the weights of the active atoms are re-optimized
/// by pairwise steps with golden-section line search.
Result minimize(std::shared_ptr<const conic::ExtensionProgram> ext, const Objective& obj,
                const Options& opts = {});

/// Minimizes a convex function of one variable on [a, b].
double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-10, int max_iterations = 200);

}  // namespace uext::fw
