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

#include "uext/frank_wolfe.hpp"

#include <array>
#include <cmath>

namespace uext::fw {

using linalg::kron;

namespace {

struct Atom {
  Matrix s;
  Matrix tau;
  double w = 0.0;
};

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

double golden_section(const std::function<double(double)>& f, double a, double b, double tol,
                      int max_iterations) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iterations && b - a > tol; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  // Endpoints matter: optimal steps are often exactly 0 or the full step.
  double x = 0.5 * (a + b);
  double best = f(x);
  for (double e : {a, b}) {
    double fe = f(e);
    if (fe < best) {
      best = fe;
      x = e;
    }
  }
  return x;
}

Result minimize(std::shared_ptr<const conic::ExtensionProgram> ext, const Objective& obj,
                const Options& opts) {
  const int ra = ext->ra(), rb = ext->rb();
  std::array<int, 2> dims{ra, rb};
  std::array<int, 1> tr_a{0};
  Matrix rho_b = linalg::partial_trace(ext->rho_local().matrix(), dims, tr_a);
  std::vector<Atom> atoms;
  {
    Atom a;
    a.s = kron(ext->rho_reduced().matrix(), rho_b);
    a.tau = ext->marginal(a.s);
    a.w = 1.0;
    atoms.push_back(std::move(a));
  }
  Matrix tau = atoms[0].tau;
  auto bp = conic::build_linear(ext);

  auto line = [&](const Matrix& d, double gmax) {
    auto phi = [&](double g) { return obj.value(tau + g * d); };
    return golden_section(phi, 0.0, gmax, 1e-12 * std::max(1.0, gmax));
  };

  Result res;
  double f = obj.value(tau);
  for (int it = 0; it < opts.max_iterations; ++it) {
    res.iterations = it + 1;
    // Corrective phase over the current active set.
    for (int k = 0; k < opts.inner_iterations && atoms.size() > 1; ++k) {
      Matrix g = obj.gradient(tau);
      int best = -1, worst = -1;
      double lo = 0.0, hi = 0.0;
      for (size_t i = 0; i < atoms.size(); ++i) {
        double v = linalg::inner(g, atoms[i].tau);
        if (best < 0 || v < lo) {
          lo = v;
          best = static_cast<int>(i);
        }
        if (atoms[i].w > 0.0 && (worst < 0 || v > hi)) {
          hi = v;
          worst = static_cast<int>(i);
        }
      }
      if (best == worst || obj.error_bound(f, hi - lo) <= 0.1 * opts.tol) break;
      Matrix d = atoms[best].tau - atoms[worst].tau;
      double step = line(d, atoms[worst].w);
      if (step <= 0.0) break;
      atoms[best].w += step;
      atoms[worst].w -= step;
      tau += step * d;
      f = obj.value(tau);
      if (atoms[worst].w <= 1e-14) atoms.erase(atoms.begin() + worst);
    }

    Matrix g = obj.gradient(tau);
    conic::set_linear_objective(bp, g);
    auto sol = conic::solve(bp.problem, opts.solver);
    ++res.lmo_calls;
    if (sol.x.empty()) break;
    Atom vertex;
    vertex.s = hermitian_part(conic::sigma_of(bp, sol));
    vertex.tau = hermitian_part(ext->marginal(vertex.s));
    double gap = linalg::inner(g, tau - vertex.tau);
    res.gap = gap;
    res.error_bound = obj.error_bound(f, gap > 0.0 ? gap : 0.0);
    if (res.error_bound <= opts.tol) {
      res.converged = true;
      break;
    }
    Matrix d = vertex.tau - tau;
    double step = line(d, 1.0);
    if (step <= 0.0) {
      // The linearization promises descent the line search cannot find;
      // the remaining gap is below what the objective can resolve.
      res.converged = res.error_bound <= 10.0 * opts.tol;
      break;
    }
    for (auto& a : atoms) a.w *= 1.0 - step;
    bool merged = false;
    for (auto& a : atoms)
      if ((a.tau - vertex.tau).norm() < 1e-9) {
        a.w += step;
        merged = true;
        break;
      }
    if (!merged) {
      vertex.w = step;
      atoms.push_back(std::move(vertex));
    }
    std::erase_if(atoms, [](const Atom& a) { return a.w <= 1e-14; });
    tau = Matrix::Zero(tau.rows(), tau.cols());
    for (const auto& a : atoms) tau += a.w * a.tau;
    f = obj.value(tau);
  }
  res.value = f;
  res.tau = tau;
  res.s = Matrix::Zero(atoms[0].s.rows(), atoms[0].s.cols());
  for (const auto& a : atoms) res.s += a.w * a.s;
  res.atoms = static_cast<int>(atoms.size());
  if (!res.converged) res.error_bound = obj.error_bound(f, res.gap > 0.0 ? res.gap : 0.0);
  return res;
}

}  // namespace uext::fw
