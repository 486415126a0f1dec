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

#include "uext/conic/builders.hpp"

#include <array>

namespace uext::conic {

using linalg::identity;
using linalg::kron;

namespace {

constexpr double kDrop = 1e-14;

using Sparse = SparseHermitian<Complex>;

Sparse dense_term(int block, const Matrix& m) {
  Sparse s;
  s.add_dense(block, m, kDrop);
  return s;
}

void append(Sparse& dst, const Sparse& src, Complex scale = 1.0) {
  for (auto e : src.upper) {
    e.value *= scale;
    dst.upper.push_back(e);
  }
}

// Embeds an order-k matrix at diagonal offset `off` of an order-n block.
Matrix placed(const Matrix& m, int off, int n) {
  Matrix out = Matrix::Zero(n, n);
  out.block(off, off, m.rows(), m.cols()) = m;
  return out;
}

std::vector<Matrix> marginal_adjoint_basis(const ExtensionProgram& ext) {
  std::vector<Matrix> out;
  for (const auto& e : hermitian_basis(ext.n())) out.push_back(ext.marginal_adjoint(e));
  return out;
}

// tr_B' s = rho~, one row per Hermitian basis element of order r.
void add_trace_rows(ConicProblem<Complex>& p, const ExtensionProgram& ext, int sigma_block) {
  const Matrix id = identity(ext.rb());
  for (const auto& b : hermitian_basis(ext.rank()))
    p.add_constraint(dense_term(sigma_block, kron(b, id)),
                     linalg::inner(b, ext.rho_reduced().matrix()));
}

BuiltProgram make(std::shared_ptr<const ExtensionProgram> ext, std::string name, Sense sense) {
  BuiltProgram bp;
  bp.ext = std::move(ext);
  bp.problem.name = std::move(name);
  bp.problem.sense = sense;
  return bp;
}

}  // namespace

BuiltProgram build_emax(std::shared_ptr<const ExtensionProgram> ext) {
  auto bp = make(ext, "emax", Sense::Maximize);
  auto& p = bp.problem;
  const int n = ext->n();
  bp.sigma_block = p.add_block(ext->sigma_dim(), "sigma");
  const int slack = p.add_block(n, "slack");
  const int lam = p.add_block(1, "lambda");
  add_trace_rows(p, *ext, bp.sigma_block);
  auto adj = marginal_adjoint_basis(*ext);
  auto basis = hermitian_basis(n);
  const Matrix& rho = ext->rho_local().matrix();
  // Phi(s) - lambda rho - S = 0.
  for (size_t q = 0; q < basis.size(); ++q) {
    Sparse f = dense_term(bp.sigma_block, adj[q]);
    append(f, dense_term(slack, -basis[q]));
    double w = linalg::inner(basis[q], rho);
    if (w != 0.0) f.add(lam, 0, 0, -w);
    p.add_constraint(std::move(f), 0.0);
  }
  p.f0.add(lam, 0, 0, 1.0);
  return bp;
}

BuiltProgram build_emax_dual(std::shared_ptr<const ExtensionProgram> ext) {
  auto bp = make(ext, "emax_dual", Sense::Minimize);
  auto& p = bp.problem;
  const int n = ext->n();
  const int r = ext->rank();
  const int xblk = p.add_block(n, "X");
  const int cblk = p.add_block(ext->sigma_dim(), "Y(x)1 - X(x)1");
  const int sblk = p.add_block(1, "tr rho X - 1");
  const Matrix id = identity(ext->rb());
  auto rbasis = hermitian_basis(r);
  bp.group_y = {0, r * r, r};
  for (const auto& b : rbasis)
    p.add_constraint(dense_term(cblk, kron(b, id)), linalg::inner(b, ext->rho_reduced().matrix()));
  bp.group_x = {r * r, n * n, n};
  auto adj = marginal_adjoint_basis(*ext);
  auto nbasis = hermitian_basis(n);
  const Matrix& rho = ext->rho_local().matrix();
  for (size_t q = 0; q < nbasis.size(); ++q) {
    Sparse f = dense_term(xblk, nbasis[q]);
    append(f, dense_term(cblk, -adj[q]));
    double w = linalg::inner(nbasis[q], rho);
    if (w != 0.0) f.add(sblk, 0, 0, w);
    p.add_constraint(std::move(f), 0.0);
  }
  p.f0.add(sblk, 0, 0, 1.0);
  return bp;
}

BuiltProgram build_emin(std::shared_ptr<const ExtensionProgram> ext) {
  auto bp = make(ext, "emin", Sense::Maximize);
  auto& p = bp.problem;
  bp.sigma_block = p.add_block(ext->sigma_dim(), "sigma");
  add_trace_rows(p, *ext, bp.sigma_block);
  p.f0 = dense_term(bp.sigma_block, ext->marginal_adjoint(ext->support_projector()));
  return bp;
}

BuiltProgram build_emin_dual(std::shared_ptr<const ExtensionProgram> ext) {
  auto bp = make(ext, "emin_dual", Sense::Minimize);
  auto& p = bp.problem;
  const int r = ext->rank();
  const int blk = p.add_block(ext->sigma_dim(), "Y(x)1 - Pi(x)1");
  const Matrix id = identity(ext->rb());
  bp.group_y = {0, r * r, r};
  for (const auto& b : hermitian_basis(r))
    p.add_constraint(dense_term(blk, kron(b, id)), linalg::inner(b, ext->rho_reduced().matrix()));
  p.f0 = dense_term(blk, ext->marginal_adjoint(ext->support_projector()));
  return bp;
}

BuiltProgram build_fidelity(std::shared_ptr<const ExtensionProgram> ext) {
  auto bp = make(ext, "fidelity", Sense::Maximize);
  auto& p = bp.problem;
  const int n = ext->n();
  const int r = ext->rank();
  const int m = p.add_block(r + n, "[[rho, X], [X^dag, tau]]");
  bp.sigma_block = p.add_block(ext->sigma_dim(), "sigma");
  for (const auto& b : hermitian_basis(r))
    p.add_constraint(dense_term(m, placed(b, 0, r + n)),
                     linalg::inner(b, ext->rho_reduced().matrix()));
  auto adj = marginal_adjoint_basis(*ext);
  auto nbasis = hermitian_basis(n);
  for (size_t q = 0; q < nbasis.size(); ++q) {
    Sparse f = dense_term(m, placed(nbasis[q], r, r + n));
    append(f, dense_term(bp.sigma_block, -adj[q]));
    p.add_constraint(std::move(f), 0.0);
  }
  add_trace_rows(p, *ext, bp.sigma_block);
  // Re tr[V X~] with the off-diagonal block X~ of order r x n.
  Matrix f0 = Matrix::Zero(r + n, r + n);
  f0.block(0, r, r, n) = 0.5 * ext->v().adjoint();
  f0.block(r, 0, n, r) = 0.5 * ext->v();
  p.f0 = dense_term(m, f0);
  return bp;
}

BuiltProgram build_fidelity_dual(std::shared_ptr<const ExtensionProgram> ext) {
  auto bp = make(ext, "fidelity_dual", Sense::Minimize);
  auto& p = bp.problem;
  const int n = ext->n();
  const int r = ext->rank();
  const int m = p.add_block(r + n, "[[W, -V^dag], [-V, Y]]");
  const int cblk = p.add_block(ext->sigma_dim(), "Z(x)1 - Y(x)1");
  const Matrix& rt = ext->rho_reduced().matrix();
  const Matrix id = identity(ext->rb());
  auto rbasis = hermitian_basis(r);
  bp.group_x = {0, r * r, r};
  for (const auto& b : rbasis) p.add_constraint(dense_term(m, placed(b, 0, r + n)), 0.5 * linalg::inner(b, rt));
  bp.group_y = {r * r, n * n, n};
  auto adj = marginal_adjoint_basis(*ext);
  auto nbasis = hermitian_basis(n);
  for (size_t q = 0; q < nbasis.size(); ++q) {
    Sparse f = dense_term(m, placed(nbasis[q], r, r + n));
    append(f, dense_term(cblk, -adj[q]));
    p.add_constraint(std::move(f), 0.0);
  }
  bp.group_z = {r * r + n * n, r * r, r};
  for (const auto& b : rbasis) p.add_constraint(dense_term(cblk, kron(b, id)), 0.5 * linalg::inner(b, rt));
  Matrix f0 = Matrix::Zero(r + n, r + n);
  f0.block(0, r, r, n) = ext->v().adjoint();
  f0.block(r, 0, n, r) = ext->v();
  p.f0 = dense_term(m, f0);
  return bp;
}

BuiltProgram build_two_extendible(std::shared_ptr<const ExtensionProgram> ext) {
  auto bp = make(ext, "two_extendible", Sense::Maximize);
  auto& p = bp.problem;
  bp.sigma_block = p.add_block(ext->sigma_dim(), "sigma");
  add_trace_rows(p, *ext, bp.sigma_block);
  auto adj = marginal_adjoint_basis(*ext);
  auto nbasis = hermitian_basis(ext->n());
  const Matrix& rho = ext->rho_local().matrix();
  for (size_t q = 0; q < nbasis.size(); ++q)
    p.add_constraint(dense_term(bp.sigma_block, adj[q]), linalg::inner(nbasis[q], rho));
  return bp;
}

BuiltProgram build_linear(std::shared_ptr<const ExtensionProgram> ext) {
  auto bp = make(ext, "linear", Sense::Maximize);
  auto& p = bp.problem;
  bp.sigma_block = p.add_block(ext->sigma_dim(), "sigma");
  add_trace_rows(p, *ext, bp.sigma_block);
  return bp;
}

void set_linear_objective(BuiltProgram& prog, const Matrix& g) {
  prog.problem.f0 = dense_term(prog.sigma_block, -prog.ext->marginal_adjoint(g));
}

Matrix sigma_of(const BuiltProgram& prog, const ConicSolution<Complex>& sol) {
  if (prog.sigma_block < 0) throw std::logic_error("program has no extension block");
  return sol.x.at(prog.sigma_block);
}

Matrix group_matrix(const BuiltProgram::Group& g, const Eigen::VectorXd& y) {
  return from_hermitian_coordinates(y.segment(g.offset, g.count), g.dim);
}

double fidelity_dual_equalized(const BuiltProgram& prog, const ConicSolution<Complex>& sol) {
  const auto& ext = *prog.ext;
  Matrix y = group_matrix(prog.group_y, sol.y);
  Matrix z = group_matrix(prog.group_z, sol.y);
  auto yh = HermitianOperator::symmetrized(y);
  auto sd = linalg::eigh(yh);
  if (sd.eigenvalues.size() == 0 || !(sd.eigenvalues(sd.eigenvalues.size() - 1) > 0.0))
    return std::numeric_limits<double>::infinity();
  Matrix yinv = linalg::apply_function(sd, [](double x) { return 1.0 / x; }, false).matrix();
  const Matrix& rt = ext.rho_reduced().matrix();
  double a = linalg::inner(ext.v().adjoint() * yinv * ext.v(), rt);
  double b = linalg::inner(z, rt);
  if (a < 0.0 || b < 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(a * b);
}

ExtendibilityResult two_extendible_feasibility(const states::BipartiteState& rho,
                                               const SolverOptions& opts) {
  auto ext = std::make_shared<const ExtensionProgram>(rho);
  auto bp = build_two_extendible(ext);
  ExtendibilityResult res;
  res.solution = solve(bp.problem, opts);
  const auto st = res.solution.status;
  if (st == Status::Infeasible) {
    res.verdict = Verdict::Infeasible;
    return res;
  }
  if (res.solution.x.empty()) return res;
  Matrix s = sigma_of(bp, res.solution);
  Matrix sigma = ext->extension(s);
  const int da = rho.d_a(), db = rho.d_b();
  std::array<int, 3> dims{da, db, db};
  std::array<int, 1> tr_bp{2}, tr_b{1};
  double r1 = (linalg::partial_trace(sigma, dims, tr_bp) - rho.matrix()).cwiseAbs().maxCoeff();
  double r2 = (linalg::partial_trace(sigma, dims, tr_b) - rho.matrix()).cwiseAbs().maxCoeff();
  res.residual = std::max(r1, r2);
  bool psd = linalg::is_psd(HermitianOperator::symmetrized(s), 1e-7);
  if ((st == Status::Optimal || res.residual <= 1e-7) && psd && res.residual <= 1e-6) {
    res.verdict = Verdict::Feasible;
    res.extension = sigma;
  }
  return res;
}

}  // namespace uext::conic
