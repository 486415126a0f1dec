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

#include <cmath>
#include <random>

#include "classical.hpp"
#include "doctest.h"
#include "uext/measures.hpp"

using namespace uext;
using namespace uext::measures;
using div::Family;

namespace {

const double kInfAlpha = std::numeric_limits<double>::infinity();

states::BipartiteState separable_mixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix m = Matrix::Zero(4, 4);
  for (int k = 0; k < 3; ++k)
    m += linalg::kron(states::random_state(2, 1, rng).matrix(), states::random_state(2, 2, rng).matrix()) / 3.0;
  return states::BipartiteState(linalg::HermitianOperator::symmetrized(m), 2, 2);
}

}  // namespace

TEST_CASE("normalization on maximally entangled states") {
  for (int d : {2, 3}) {
    auto phi = states::max_entangled(d);
    const double ld = std::log2(static_cast<double>(d));
    CHECK(e_max_u(phi).value == doctest::Approx(ld).epsilon(1e-7));
    CHECK(e_min_u(phi).value == doctest::Approx(ld).epsilon(1e-7));
    CHECK(sandwiched_half_u(unext_fidelity(phi)) == doctest::Approx(ld).epsilon(1e-7));
    CHECK(e_rel_u(phi).value == doctest::Approx(ld).epsilon(1e-5));
    CHECK(petz_alpha_u(phi, 1.5).value == doctest::Approx(ld).epsilon(1e-4));
  }
}

TEST_CASE("product states are free") {
  std::mt19937_64 rng(1);
  auto prod = states::product_state(states::random_state(2, 2, rng), states::random_state(3, 3, rng));
  CHECK(e_max_u(prod).value < 1e-7);
  CHECK(e_min_u(prod).value < 1e-7);
  CHECK(unext_fidelity(prod).value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(e_rel_u(prod).value < 1e-6);
}

TEST_CASE("pure-state values") {
  auto psi = states::pure_from_schmidt({0.8, 0.2});
  CHECK(e_min_u(psi).value == doctest::Approx(-std::log2(0.8)).epsilon(1e-7));
  CHECK(unext_fidelity(psi).value == doctest::Approx(0.8).epsilon(1e-7));
  CHECK(e_max_u(psi).value == doctest::Approx(1.0).epsilon(1e-7));
  std::vector<double> spec{0.5, 0.3, 0.2};
  auto psi3 = states::pure_from_schmidt(spec, 4);
  CHECK(e_rel_u(psi3).value == doctest::Approx(oracle::shannon_renyi(spec, 1.0)).epsilon(1e-5));
  for (double a : {0.5, 1.5, 2.0}) {
    double gamma = (2.0 - a) / a;
    CHECK(petz_alpha_u(psi3, a).value == doctest::Approx(oracle::shannon_renyi(spec, gamma)).epsilon(1e-4));
  }
}

TEST_CASE("pure-state closed forms") {
  std::vector<double> spec{0.6, 0.3, 0.1};
  auto psi = states::pure_from_schmidt(spec);
  CHECK(pure_state_measures(psi, Family::Sandwiched, kInfAlpha) == doctest::Approx(std::log2(3.0)));
  CHECK(pure_state_measures(psi, Family::Sandwiched, 0.5) == doctest::Approx(-std::log2(0.6)));
  CHECK(pure_state_measures(psi, Family::Sandwiched, 2.0) == doctest::Approx(oracle::shannon_renyi(spec, 1.0 / 3.0)));
  CHECK(pure_state_measures(psi, Family::Geometric, 1.5) == doctest::Approx(std::log2(3.0)));
  CHECK(pure_state_measures(psi, Family::Petz, 1.0) == doctest::Approx(oracle::shannon_renyi(spec, 1.0)));
  CHECK(pure_state_measures(psi, Family::Min, 0.0) == doctest::Approx(-std::log2(0.6)));
  CHECK(pure_state_measures(psi, Family::Max, 0.0) == doctest::Approx(e_max_u(psi).value).epsilon(1e-7));
  CHECK_THROWS(pure_state_measures(states::isotropic(2, 0.9), Family::Petz, 2.0));
}

TEST_CASE("erased states") {
  for (double eps : {0.0, 0.25, 0.5, 0.75, 1.0})
    CHECK(e_rel_u(states::erased(eps)).value == doctest::Approx(1.0 - eps).epsilon(1e-4));
}

TEST_CASE("isotropic relative-entropy values are bracketed") {
  for (double r : {0.8, 0.9, 0.95}) {
    auto rho = states::isotropic(2, r);
    double lo = sandwiched_half_u(unext_fidelity(rho));
    double hi = e_max_u(rho).value;
    double v = e_rel_u(rho).value;
    CHECK(lo <= v + 1e-6);
    CHECK(v <= hi + 1e-5);
  }
}

TEST_CASE("two-extendibility and faithfulness") {
  auto sep = separable_mixture(3);
  auto chk = is_two_extendible(sep);
  CHECK(chk.extendible);
  CHECK(chk.certificate.has_value());
  CHECK_FALSE(is_two_extendible(states::max_entangled(2)).extendible);
  CHECK(e_max_u(sep).value <= 1e-6);
  CHECK(e_min_u(sep).value <= 1e-6);
  CHECK(petz_alpha_u(sep, 0.5).value <= 1e-4);
  auto ent = states::isotropic(2, 0.85);
  CHECK_FALSE(is_two_extendible(ent).extendible);
  CHECK(e_max_u(ent).value > 1e-4);
  CHECK(e_rel_u(ent).value > 1e-4);
}

TEST_CASE("ordering chain") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto rho = states::random_bipartite(2, 2, 2, seed);
    double emin = e_min_u(rho).value;
    double half = sandwiched_half_u(unext_fidelity(rho));
    double rel = e_rel_u(rho).value;
    double emax = e_max_u(rho).value;
    CHECK(emin <= half + 1e-6);
    CHECK(half <= rel + 1e-5);
    CHECK(rel <= emax + 1e-5);
  }
}

TEST_CASE("invariance under local unitaries") {
  std::mt19937_64 rng(6);
  auto rho = states::random_bipartite(2, 2, 3, 7);
  auto rot = states::local_unitary(rho, linalg::random_unitary(2, rng), linalg::random_unitary(2, rng));
  CHECK(e_max_u(rot).value == doctest::Approx(e_max_u(rho).value).epsilon(1e-6));
  CHECK(e_min_u(rot).value == doctest::Approx(e_min_u(rho).value).epsilon(1e-6));
  CHECK(unext_fidelity(rot).value == doctest::Approx(unext_fidelity(rho).value).epsilon(1e-6));
  CHECK(e_rel_u(rot).value == doctest::Approx(e_rel_u(rho).value).epsilon(1e-5));
}

TEST_CASE("monotone under one-way LOCC") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 3; ++t) {
    auto rho = states::random_bipartite(2, 2, 2, 100 + t);
    auto ch = states::coarse_grain(states::one_locc_instrument(states::random_locc_branches(2, 2, 2, rng)));
    auto out = states::apply_branch(ch, rho, 2, 2);
    REQUIRE(out.state.has_value());
    CHECK(e_max_u(*out.state).value <= e_max_u(rho).value + 1e-6);
    CHECK(e_min_u(*out.state).value <= e_min_u(rho).value + 1e-6);
    CHECK(e_rel_u(*out.state).value <= e_rel_u(rho).value + 1e-5);
  }
}

TEST_CASE("regularization does not move the value") {
  auto rho = states::isotropic(2, 0.9);
  Options a, b;
  b.eps_reg = 1e-11;
  CHECK(std::abs(e_rel_u(rho, a).value - e_rel_u(rho, b).value) < 1e-6);
}

TEST_CASE("dual certificates") {
  Options o;
  o.solve_dual = true;
  auto rho = states::random_bipartite(2, 2, 3, 12);
  auto a = e_max_u(rho, o);
  CHECK(a.dual_certificate.has_value());
  CHECK(a.diagnostics.gap <= 1e-7);
  auto f = unext_fidelity(rho, o);
  CHECK(std::abs(f.diagnostics.dual_value - f.value) <= 1e-6);
}

TEST_CASE("Petz parameter validation") {
  auto rho = states::isotropic(2, 0.9);
  CHECK_THROWS_AS(petz_alpha_u(rho, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(petz_alpha_u(rho, 0.0), std::invalid_argument);
  CHECK(petz_alpha_u(rho, 1.0).value == doctest::Approx(e_rel_u(rho).value));
}

TEST_CASE("Petz values are convex on mixtures") {
  auto r1 = states::isotropic(2, 0.95);
  auto r2 = states::pure_from_schmidt({0.7, 0.3});
  Matrix mix = 0.5 * (r1.matrix() + r2.matrix());
  states::BipartiteState m(linalg::HermitianOperator::symmetrized(mix), 2, 2);
  for (double a : {0.5, 0.8}) {
    double lhs = petz_alpha_u(m, a).value;
    double rhs = 0.5 * (petz_alpha_u(r1, a).value + petz_alpha_u(r2, a).value);
    CHECK(lhs <= rhs + 1e-3);
  }
}
