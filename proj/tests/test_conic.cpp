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

#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "barrier_backend.hpp"
#include "doctest.h"
#include "uext/conic/builders.hpp"
#include "uext/conic/schur.hpp"

using namespace uext;
using namespace uext::conic;
using linalg::HermitianOperator;

namespace {

using Builder = BuiltProgram (*)(std::shared_ptr<const ExtensionProgram>);

ConicSolution<Complex> run(Builder b, const states::BipartiteState& rho, SolverOptions o = {}) {
  auto ext = std::make_shared<const ExtensionProgram>(rho);
  auto p = b(ext);
  return solve(p.problem, o);
}

states::BipartiteState product() {
  std::mt19937_64 rng(31);
  return states::product_state(states::random_state(2, 2, rng), states::random_state(2, 2, rng));
}

// lambda_max of a real symmetric matrix as an SDP: max <C, X> s.t. tr X = 1.
ConicProblem<double> lambda_max_problem(const Eigen::MatrixXd& c) {
  ConicProblem<double> p;
  p.name = "lambda_max";
  int b = p.add_block(static_cast<int>(c.rows()), "X");
  p.f0.add_dense(b, c);
  p.add_constraint(SparseHermitian<double>{}, 1.0);
  p.f.back().add_dense(b, Eigen::MatrixXd::Identity(c.rows(), c.cols()));
  return p;
}

}  // namespace

TEST_CASE("solver on a small SDP") {
  Eigen::MatrixXd c(3, 3);
  c << 2, 1, 0, 1, 1, 0.5, 0, 0.5, -1;
  auto sol = solve(lambda_max_problem(c));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.primal_objective == doctest::Approx(es.eigenvalues()(2)).epsilon(1e-8));
  CHECK(sol.gap < 1e-7);
}

TEST_CASE("solver detects infeasibility and unboundedness") {
  ConicProblem<double> p;
  int b = p.add_block(2, "X");
  SparseHermitian<double> tr;
  tr.add_dense(b, Eigen::MatrixXd::Identity(2, 2));
  p.add_constraint(tr, -1.0);
  CHECK(solve(p).status == Status::Infeasible);

  ConicProblem<double> q;
  b = q.add_block(2, "X");
  q.f0.add(b, 0, 0, 1.0);
  SparseHermitian<double> off;
  off.add(b, 1, 1, 1.0);
  q.add_constraint(off, 1.0);
  CHECK(solve(q).status == Status::Unbounded);
}

TEST_CASE("presolve removes dependent rows") {
  ConicProblem<double> p;
  int b = p.add_block(2, "X");
  SparseHermitian<double> a, a2;
  a.add(b, 0, 0, 1.0);
  a2.add(b, 0, 0, 2.0);
  p.add_constraint(a, 0.5);
  p.add_constraint(a2, 1.0);
  auto pr = presolve(p);
  CHECK(pr.kept.size() == 1);
  CHECK(pr.dropped.size() == 1);
  CHECK(pr.consistent);
  p.c[1] = 3.0;
  CHECK_FALSE(presolve(p).consistent);
}

TEST_CASE("Schur assembly matches the serial reference") {
  auto ext = std::make_shared<const ExtensionProgram>(states::random_bipartite(2, 2, 4, 3));
  auto real = embed(build_emax(ext).problem);
  std::vector<const SparseHermitian<double>*> fs;
  for (const auto& f : real.f) fs.push_back(&f);
  SchurOperands<double> ops(real.block_dims, fs);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  BlockMatrix<double> q;
  for (int d : real.block_dims) {
    Eigen::MatrixXd m(d, d);
    for (auto& x : m.reshaped()) x = g(rng);
    q.push_back(m * m.transpose());
  }
  Eigen::MatrixXd h1, h2, h3;
  assemble_schur(ops, q, h1, true);
  assemble_schur(ops, q, h2, false);
  assemble_schur_reference(ops, q, h3);
  CHECK((h1 - h3).norm() <= 1e-10 * h3.norm());
  CHECK((h1 - h2).norm() == 0.0);
}

TEST_CASE("problem files round trip") {
  auto ext = std::make_shared<const ExtensionProgram>(states::isotropic(2, 0.9));
  auto p = build_fidelity(ext).problem;
  std::stringstream ss;
  write_problem(ss, p);
  auto q = read_complex_problem(ss);
  CHECK(q.block_dims == p.block_dims);
  CHECK(q.c == p.c);
  auto a = solve(p), b = solve(q);
  CHECK(a.primal_objective == doctest::Approx(b.primal_objective).epsilon(1e-12));
}

TEST_CASE("extension program maps") {
  auto rho = states::erased(0.4);
  ExtensionProgram ext(rho);
  CHECK(ext.ra() == 3);
  CHECK(ext.rb() == 2);
  CHECK(ext.rank() == 3);
  Matrix s = ext.interior_point();
  CHECK((ext.reduced_trace(s) - ext.rho_reduced().matrix()).norm() < 1e-12);
  std::mt19937_64 rng(2);
  Matrix x = linalg::ginibre(s.rows(), s.rows(), rng);
  x = x + x.adjoint().eval();
  Matrix e = linalg::ginibre(ext.n(), ext.n(), rng);
  e = e + e.adjoint().eval();
  CHECK(linalg::inner(ext.marginal(x), e) == doctest::Approx(linalg::inner(x, ext.marginal_adjoint(e))));
  Matrix full = ext.extension(s);
  std::array<int, 3> dims{3, 2, 2};
  std::array<int, 1> tr{2};
  CHECK((linalg::partial_trace(full, dims, tr) - rho.matrix()).norm() < 1e-12);
  auto basis = hermitian_basis(3);
  CHECK(basis.size() == 9);
  Matrix h = basis[4] * 0.3 + basis[7] * -1.2;
  CHECK((from_hermitian_coordinates(hermitian_coordinates(h), 3) - h).norm() < 1e-12);
}

TEST_CASE("max-unextendible program") {
  CHECK(run(build_emax, states::max_entangled(2)).primal_objective == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(run(build_emax, product()).primal_objective == doctest::Approx(1.0).epsilon(1e-8));
  // Independent solver on the same program.
  auto iso = states::isotropic(2, 0.9);
  oracle::BarrierBackend barrier;
  SolverOptions ob;
  ob.backend = &barrier;
  auto ref = run(build_emax, iso, ob);
  auto ours = run(build_emax, iso);
  REQUIRE(ours.status == Status::Optimal);
  CHECK(std::abs(ours.primal_objective - ref.primal_objective) < 1e-6);
  CHECK(ours.primal_objective == doctest::Approx(0.622008).epsilon(1e-5));
}

TEST_CASE("complex and embedded solves agree") {
  for (std::uint64_t seed : {1, 2, 3}) {
    auto rho = states::random_bipartite(2, 2, 3, seed);
    SolverOptions direct;
    direct.embed_real = false;
    auto a = run(build_emax, rho);
    auto b = run(build_emax, rho, direct);
    CHECK(std::abs(a.primal_objective - b.primal_objective) < 1e-8);
  }
}

TEST_CASE("strong duality for every builder pair") {
  std::vector<states::BipartiteState> inputs{states::max_entangled(2), product(),
                                             states::isotropic(2, 0.9),
                                             states::random_bipartite(2, 2, 4, 5),
                                             states::random_bipartite(2, 2, 2, 6)};
  for (const auto& rho : inputs) {
    auto a = run(build_emax, rho), ad = run(build_emax_dual, rho);
    CHECK(std::abs(a.primal_objective - ad.primal_objective) <= 1e-7);
    auto b = run(build_emin, rho), bd = run(build_emin_dual, rho);
    CHECK(std::abs(b.primal_objective - bd.primal_objective) <= 1e-7);
    auto ext = std::make_shared<const ExtensionProgram>(rho);
    auto fd = build_fidelity_dual(ext);
    auto fsol = solve(fd.problem);
    auto f = run(build_fidelity, rho);
    CHECK(std::abs(f.primal_objective - fsol.primal_objective) <= 1e-7);
    CHECK(std::abs(f.primal_objective - fidelity_dual_equalized(fd, fsol)) <= 1e-6);
    for (const auto* s : {&a, &ad, &b, &bd, &f, &fsol}) CHECK(s->gap <= 1e-7);
  }
}

TEST_CASE("min-unextendible and fidelity programs") {
  auto psi = states::pure_from_schmidt({0.8, 0.2});
  CHECK(run(build_emin, states::max_entangled(2)).primal_objective == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(run(build_emin, psi).primal_objective == doctest::Approx(0.64).epsilon(1e-8));
  CHECK(run(build_emin, product()).primal_objective == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(run(build_fidelity, psi).primal_objective == doctest::Approx(0.8).epsilon(1e-8));
  CHECK(run(build_fidelity, product()).primal_objective == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(run(build_fidelity, states::max_entangled(3)).primal_objective == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("returned extensions are feasible") {
  auto rho = states::random_bipartite(2, 2, 3, 9);
  auto ext = std::make_shared<const ExtensionProgram>(rho);
  auto p = build_emax(ext);
  auto sol = solve(p.problem);
  Matrix sigma = ext->extension(sigma_of(p, sol));
  std::array<int, 3> dims{2, 2, 2};
  std::array<int, 1> tr{2};
  CHECK((linalg::partial_trace(sigma, dims, tr) - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-7);
  CHECK(linalg::is_psd(HermitianOperator::symmetrized(sigma), 1e-8));
}

TEST_CASE("two-extendibility") {
  auto prod = two_extendible_feasibility(product());
  CHECK(prod.verdict == Verdict::Feasible);
  REQUIRE(prod.extension.has_value());
  CHECK(prod.residual < 1e-7);
  CHECK(two_extendible_feasibility(states::max_entangled(2)).verdict == Verdict::Infeasible);
  // Monotone in the isotropic parameter; the boundary lies at 3/4.
  Verdict last = Verdict::Feasible;
  for (int i = 0; i <= 10; ++i) {
    auto v = two_extendible_feasibility(states::isotropic(2, 0.5 + 0.05 * i)).verdict;
    CHECK(v != Verdict::Indeterminate);
    if (last == Verdict::Infeasible) CHECK(v == Verdict::Infeasible);
    last = v;
  }
  double lo = 0.5, hi = 1.0;
  while (hi - lo > 1e-3) {
    double mid = 0.5 * (lo + hi);
    if (two_extendible_feasibility(states::isotropic(2, mid)).verdict == Verdict::Feasible) lo = mid;
    else hi = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(0.75).epsilon(0.01));
}
