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

#include "doctest.h"
#include "finite_diff.hpp"
#include "uext/linalg.hpp"
#include "uext/states.hpp"

using namespace uext;
using namespace uext::linalg;

namespace {

Matrix random_hermitian(int d, std::mt19937_64& rng) {
  Matrix g = ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("hermitian operator validates input") {
  Matrix m(2, 2);
  m << 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 1.0;
  CHECK_THROWS_AS(HermitianOperator{m}, std::invalid_argument);
  CHECK_THROWS_AS(HermitianOperator{Matrix::Zero(2, 3)}, DimensionMismatch);
  auto h = HermitianOperator::symmetrized(m);
  CHECK(max_hermiticity_defect(h.matrix()) == 0.0);
}

TEST_CASE("partial trace and its adjoint") {
  std::mt19937_64 rng(7);
  std::array<int, 3> dims{2, 3, 2};
  Matrix x = ginibre(12, 12, rng);
  for (int sys = 0; sys < 3; ++sys) {
    std::array<int, 1> tr{sys};
    Matrix pt = partial_trace(x, dims, tr);
    CHECK(pt.rows() == 12 / dims[sys]);
    CHECK(std::abs(pt.trace() - x.trace()) < 1e-12);
    Matrix y = ginibre(pt.rows(), pt.rows(), rng);
    Matrix adj = partial_trace_adjoint(y, dims, tr);
    CHECK(std::abs((pt.adjoint() * y).trace() - (x.adjoint() * adj).trace()) < 1e-10);
  }
  Matrix a = ginibre(2, 2, rng), b = ginibre(3, 3, rng), c = ginibre(2, 2, rng);
  std::array<int, 2> two{0, 2};
  Matrix kept = partial_trace(kron({a, b, c}), dims, two);
  CHECK((kept - a.trace() * c.trace() * b).norm() < 1e-12);
}

TEST_CASE("permutation of subsystems") {
  std::mt19937_64 rng(3);
  Matrix a = ginibre(2, 2, rng), b = ginibre(3, 3, rng), c = ginibre(4, 4, rng);
  std::array<int, 3> dims{2, 3, 4};
  std::array<int, 3> perm{2, 0, 1};
  Matrix p = permute_subsystems(kron({a, b, c}), dims, perm);
  CHECK((p - kron({c, a, b})).norm() < 1e-12);
}

TEST_CASE("partial transpose of the ebit has a negative eigenvalue") {
  auto phi = states::max_entangled(2);
  std::array<int, 2> dims{2, 2};
  auto pt = HermitianOperator::symmetrized(partial_transpose(phi.matrix(), dims, 1));
  auto sd = eigh(pt);
  CHECK(sd.eigenvalues(3) == doctest::Approx(-0.5));
  CHECK(sd.eigenvalues(0) == doctest::Approx(0.5));
}

TEST_CASE("spectral tools") {
  std::mt19937_64 rng(11);
  auto rho = states::random_state(4, 2, rng);
  auto sd = eigh(rho);
  for (Index i = 1; i < sd.eigenvalues.size(); ++i) CHECK(sd.eigenvalues(i - 1) >= sd.eigenvalues(i));
  auto p = support_projector(rho);
  CHECK(p.trace() == doctest::Approx(2.0));
  CHECK((p.matrix() * rho.matrix() - rho.matrix()).norm() < 1e-10);
  Matrix v = support_isometry(rho);
  CHECK((v.adjoint() * v - identity(2)).norm() < 1e-12);
  CHECK(is_psd(rho));
  CHECK_FALSE(is_psd(HermitianOperator::symmetrized(-rho.matrix())));
  auto sq = matrix_function(rho, [](double x) { return std::sqrt(x); }, true);
  CHECK((sq.matrix() * sq.matrix() - rho.matrix()).norm() < 1e-10);
  Matrix u = random_unitary(5, rng);
  CHECK((u.adjoint() * u - identity(5)).norm() < 1e-12);
}

TEST_CASE("fidelity and norms") {
  Vector a(2), b(2);
  a << 1.0, 0.0;
  b << std::sqrt(0.3), std::sqrt(0.7);
  auto pa = HermitianOperator::symmetrized(a * a.adjoint());
  auto pb = HermitianOperator::symmetrized(b * b.adjoint());
  CHECK(root_fidelity(pa, pb) == doctest::Approx(std::sqrt(0.3)).epsilon(1e-9));
  CHECK(root_fidelity(pa, pa) == doctest::Approx(1.0));
  Matrix d(2, 2);
  d << 1.0, 0.0, 0.0, -2.0;
  CHECK(trace_norm(d) == doctest::Approx(3.0));
  CHECK(operator_norm(HermitianOperator(d)) == doctest::Approx(2.0));
}

TEST_CASE("support inclusion") {
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  auto zero = HermitianOperator(p0);
  auto mixed = HermitianOperator(identity(2) / 2.0);
  CHECK(support_exceeds(mixed, zero));
  CHECK_FALSE(support_exceeds(zero, mixed));
}

TEST_CASE("Frechet gradients match finite differences") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    auto sigma = states::random_state(4, 4, rng);
    auto rho = states::random_state(4, 3, rng);
    Matrix dir = random_hermitian(4, rng);
    auto g = log_frechet_gradient(sigma, rho);
    auto f_log = [&](const Matrix& s) {
      auto l = matrix_function(HermitianOperator::symmetrized(s),
                               [](double x) { return std::log(x); }, false);
      return (rho.matrix() * l.matrix()).trace().real();
    };
    CHECK(inner(g.matrix(), dir) == doctest::Approx(oracle::directional(f_log, sigma.matrix(), dir, 1e-6)).epsilon(1e-5));
    for (double p : {-0.5, 0.3, 0.7}) {
      auto gp = power_frechet_gradient(sigma, rho, p);
      auto f_pow = [&](const Matrix& s) {
        auto l = matrix_function(HermitianOperator::symmetrized(s),
                                 [p](double x) { return std::pow(x, p); }, false);
        return (rho.matrix() * l.matrix()).trace().real();
      };
      CHECK(inner(gp.matrix(), dir) ==
            doctest::Approx(oracle::directional(f_pow, sigma.matrix(), dir, 1e-6)).epsilon(1e-5));
    }
  }
}

TEST_CASE("Frechet gradient at a degenerate spectrum") {
  auto sigma = HermitianOperator(identity(3) / 3.0);
  std::mt19937_64 rng(2);
  auto rho = states::random_state(3, 3, rng);
  auto g = log_frechet_gradient(sigma, rho);
  // Dlog at c*I is multiplication by 1/c.
  CHECK((g.matrix() - 3.0 * rho.matrix()).norm() < 1e-8);
}
