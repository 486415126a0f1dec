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

#include "uext/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace uext::measures {

using conic::BuiltProgram;
using conic::ExtensionProgram;
using conic::Status;
using linalg::HermitianOperator;

namespace {

using Solution = conic::ConicSolution<Complex>;

constexpr double kLn2 = 0.69314718055994530942;

void record(Diagnostics& d, const Solution& sol, const conic::SolverOptions& opts) {
  d.status = conic::to_string(sol.status);
  d.iterations = sol.iterations;
  d.primal_residual = sol.primal_residual;
  d.dual_residual = sol.dual_residual;
  d.gap = sol.gap;
  d.converged = acceptable(sol, opts);
}

double neg_half_log2(double x) {
  if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -0.5 * std::log2(x));
}

// Lifts an operator on the reduced support back to the original A B.
Matrix lift_reduced(const ExtensionProgram& ext, const Matrix& y) {
  return ext.embed_local(ext.v() * y * ext.v().adjoint());
}

struct SdpRun {
  std::shared_ptr<const ExtensionProgram> ext;
  BuiltProgram primal;
  Solution sol;
};

SdpRun run_primal(const states::BipartiteState& rho, BuiltProgram (*build)(std::shared_ptr<const ExtensionProgram>),
                  const Options& opts, MeasureResult& out) {
  SdpRun r;
  r.ext = std::make_shared<const ExtensionProgram>(rho);
  r.primal = build(r.ext);
  r.sol = conic::solve(r.primal.problem, opts.solver);
  record(out.diagnostics, r.sol, opts.solver);
  out.raw = r.sol.primal_objective;
  if (!r.sol.x.empty() && r.primal.sigma_block >= 0)
    out.optimal_extension = r.ext->extension(conic::sigma_of(r.primal, r.sol));
  return r;
}

Solution run_dual(const SdpRun& r, BuiltProgram (*build)(std::shared_ptr<const ExtensionProgram>),
                  const Options& opts, MeasureResult& out, BuiltProgram& dual) {
  dual = build(r.ext);
  Solution sol = conic::solve(dual.problem, opts.solver);
  out.diagnostics.dual_value = sol.primal_objective;
  out.diagnostics.gap = std::max(out.diagnostics.gap, std::abs(sol.primal_objective - out.raw));
  out.diagnostics.converged = out.diagnostics.converged && acceptable(sol, opts.solver);
  return sol;
}

Matrix floored(const Matrix& tau, double eps, linalg::SpectralDecomposition* sd_out = nullptr) {
  auto sd = linalg::eigh(HermitianOperator::symmetrized(tau));
  for (Index i = 0; i < sd.eigenvalues.size(); ++i)
    sd.eigenvalues(i) = std::max(sd.eigenvalues(i), eps);
  if (sd_out) *sd_out = sd;
  return sd.eigenvectors * sd.eigenvalues.asDiagonal() * sd.eigenvectors.adjoint();
}

std::optional<MeasureResult> faithful_zero(const states::BipartiteState& rho, const Options& opts) {
  if (!opts.faithfulness_check) return std::nullopt;
  auto chk = conic::two_extendible_feasibility(rho, opts.solver);
  if (chk.verdict != conic::Verdict::Feasible) return std::nullopt;
  MeasureResult out;
  out.value = 0.0;
  out.raw = 0.0;
  out.optimal_extension = chk.extension;
  out.diagnostics.status = "two-extendible";
  out.diagnostics.iterations = chk.solution.iterations;
  out.diagnostics.primal_residual = chk.residual;
  out.diagnostics.converged = true;
  return out;
}

MeasureResult run_fw(const states::BipartiteState& rho, const fw::Objective& obj,
                     const Options& opts) {
  auto ext = std::make_shared<const ExtensionProgram>(rho);
  fw::Options fo = opts.fw;
  fo.solver = opts.solver;
  auto res = fw::minimize(ext, obj, fo);
  MeasureResult out;
  out.raw = res.value;
  out.optimal_extension = ext->extension(res.s);
  out.diagnostics.status = res.converged ? "converged" : "max_iterations";
  out.diagnostics.iterations = res.iterations;
  out.diagnostics.gap = res.error_bound;
  out.diagnostics.converged = res.converged;
  return out;
}

}  // namespace

bool acceptable(const Solution& sol, const conic::SolverOptions& opts) {
  if (sol.status == Status::Optimal) return true;
  if (sol.status != Status::MaxIterations) return false;
  return sol.primal_residual <= 1e3 * opts.feas_tol && sol.dual_residual <= 1e3 * opts.feas_tol &&
         sol.relative_gap <= 1e3 * opts.gap_tol;
}

MeasureResult e_max_u(const states::BipartiteState& rho, const Options& opts) {
  MeasureResult out;
  auto run = run_primal(rho, conic::build_emax, opts, out);
  out.value = neg_half_log2(out.raw);
  out.infinite = std::isinf(out.value);
  if (opts.solve_dual) {
    BuiltProgram dual;
    auto sol = run_dual(run, conic::build_emax_dual, opts, out, dual);
    if (sol.y.size() > 0) out.dual_certificate = lift_reduced(*run.ext, conic::group_matrix(dual.group_y, sol.y));
  }
  return out;
}

MeasureResult e_min_u(const states::BipartiteState& rho, const Options& opts) {
  MeasureResult out;
  auto run = run_primal(rho, conic::build_emin, opts, out);
  out.value = neg_half_log2(out.raw);
  out.infinite = std::isinf(out.value);
  if (opts.solve_dual) {
    BuiltProgram dual;
    auto sol = run_dual(run, conic::build_emin_dual, opts, out, dual);
    if (sol.y.size() > 0) out.dual_certificate = lift_reduced(*run.ext, conic::group_matrix(dual.group_y, sol.y));
  }
  return out;
}

MeasureResult unext_fidelity(const states::BipartiteState& rho, const Options& opts) {
  MeasureResult out;
  auto run = run_primal(rho, conic::build_fidelity, opts, out);
  out.value = std::clamp(out.raw, 0.0, 1.0);
  if (opts.solve_dual) {
    BuiltProgram dual;
    auto sol = run_dual(run, conic::build_fidelity_dual, opts, out, dual);
    if (sol.y.size() > 0) {
      // Both the dual objective and its rescaled form bound F from above; the
      // rescaled one loses accuracy when Y is nearly singular.
      double eq = conic::fidelity_dual_equalized(dual, sol);
      if (std::isfinite(eq) && eq < out.diagnostics.dual_value) {
        out.diagnostics.dual_value = eq;
        out.diagnostics.gap = std::max(std::abs(run.sol.gap), std::abs(eq - out.raw));
      }
      out.dual_certificate = run.ext->embed_local(conic::group_matrix(dual.group_y, sol.y));
    }
  }
  return out;
}

double sandwiched_half_u(const MeasureResult& fidelity) {
  if (!(fidelity.value > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -std::log2(fidelity.value));
}

MeasureResult e_rel_u(const states::BipartiteState& rho, const Options& opts) {
  if (auto z = faithful_zero(rho, opts)) return *z;
  auto ext = ExtensionProgram(rho);
  const Matrix rho_l = ext.rho_local().matrix();
  double neg_entropy = 0.0;  // tr[rho ln rho]
  auto sd = linalg::eigh(ext.rho_local());
  for (Index i = 0; i < sd.eigenvalues.size(); ++i)
    if (sd.eigenvalues(i) > 0.0) neg_entropy += sd.eigenvalues(i) * std::log(sd.eigenvalues(i));
  const double eps = opts.eps_reg;
  fw::Objective obj;
  obj.value = [&](const Matrix& tau) {
    linalg::SpectralDecomposition t;
    floored(tau, eps, &t);
    double cross = 0.0;
    for (Index k = 0; k < t.eigenvalues.size(); ++k) {
      auto v = t.eigenvectors.col(k);
      cross += std::log(t.eigenvalues(k)) * (v.adjoint() * rho_l * v)(0, 0).real();
    }
    return 0.5 * (neg_entropy - cross) / kLn2;
  };
  obj.gradient = [&](const Matrix& tau) {
    auto g = linalg::log_frechet_gradient(HermitianOperator::symmetrized(floored(tau, eps)),
                                          ext.rho_local());
    return Matrix((-0.5 / kLn2) * g.matrix());
  };
  obj.error_bound = [](double, double gap) { return gap; };
  auto out = run_fw(rho, obj, opts);
  out.value = std::max(0.0, out.raw);
  return out;
}

MeasureResult petz_alpha_u(const states::BipartiteState& rho, double alpha, const Options& opts) {
  if (alpha == 1.0) return e_rel_u(rho, opts);
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("petz_alpha_u: alpha must lie in (0, 1) or (1, 2]");
  if (auto z = faithful_zero(rho, opts)) return *z;
  auto ext = ExtensionProgram(rho);
  const HermitianOperator rho_a =
      linalg::matrix_function(ext.rho_local(), [alpha](double x) { return std::pow(x, alpha); }, true);
  const Matrix rho_am = rho_a.matrix();
  const double sign = alpha > 1.0 ? 1.0 : -1.0;
  const double p = 1.0 - alpha;
  const double eps = opts.eps_reg;
  fw::Objective obj;
  obj.value = [&](const Matrix& tau) {
    linalg::SpectralDecomposition t;
    floored(tau, eps, &t);
    double q = 0.0;
    for (Index k = 0; k < t.eigenvalues.size(); ++k) {
      auto v = t.eigenvectors.col(k);
      q += std::pow(t.eigenvalues(k), p) * (v.adjoint() * rho_am * v)(0, 0).real();
    }
    return sign * q;
  };
  obj.gradient = [&](const Matrix& tau) {
    auto g = linalg::power_frechet_gradient(HermitianOperator::symmetrized(floored(tau, eps)),
                                            rho_a, p);
    return Matrix(sign * g.matrix());
  };
  obj.error_bound = [alpha, sign](double v, double gap) {
    double q = sign * v;
    if (alpha > 1.0) {
      double lb = q - gap;
      if (!(lb > 0.0)) return std::numeric_limits<double>::infinity();
      return 0.5 * std::log2(q / lb) / (alpha - 1.0);
    }
    return 0.5 * std::log2((q + gap) / q) / (1.0 - alpha);
  };
  auto out = run_fw(rho, obj, opts);
  out.value = std::max(0.0, 0.5 * std::log2(sign * out.raw) / (alpha - 1.0));
  return out;
}

double pure_state_measures(const states::BipartiteState& psi, div::Family family, double alpha) {
  const Matrix& m = psi.matrix();
  double purity = (m * m).trace().real();
  if (std::abs(purity - 1.0) > 1e-8)
    throw std::invalid_argument("pure_state_measures: state is not pure");
  RealVector spec = div::schmidt_coefficients(psi);
  const double inf = std::numeric_limits<double>::infinity();
  switch (family) {
    case div::Family::Petz:
      return div::renyi_entropy(spec, alpha == 1.0 ? 1.0 : (2.0 - alpha) / alpha);
    case div::Family::Sandwiched: {
      double beta = std::isinf(alpha) ? 0.0 : (alpha == 0.5 ? inf : 1.0 / (2.0 * alpha - 1.0));
      return div::renyi_entropy(spec, beta);
    }
    case div::Family::Geometric:
    case div::Family::BS:
    case div::Family::Max:
      return div::renyi_entropy(spec, 0.0);
    case div::Family::Min:
      return div::renyi_entropy(spec, inf);
    case div::Family::RelEnt:
      return div::renyi_entropy(spec, 1.0);
  }
  return 0.0;
}

ExtendibilityCheck is_two_extendible(const states::BipartiteState& rho, const Options& opts) {
  auto r = conic::two_extendible_feasibility(rho, opts.solver);
  ExtendibilityCheck out;
  out.verdict = r.verdict;
  out.extendible = r.verdict == conic::Verdict::Feasible;
  out.certificate = r.extension;
  out.residual = r.residual;
  return out;
}

}  // namespace uext::measures
