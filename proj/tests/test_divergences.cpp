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
#include "uext/divergences.hpp"

using namespace uext;
using namespace uext::div;
using linalg::HermitianOperator;
using linalg::identity;

namespace {

HermitianOperator diag(const std::vector<double>& p) {
  Matrix m = Matrix::Zero(p.size(), p.size());
  for (size_t i = 0; i < p.size(); ++i) m(i, i) = p[i];
  return HermitianOperator(m);
}

HermitianOperator ket0() { return diag({1.0, 0.0}); }

}  // namespace

TEST_CASE("divergence of a state with itself vanishes") {
  std::mt19937_64 rng(1);
  auto rho = states::random_state(3, 3, rng);
  for (double a : {0.5, 0.8, 1.5, 2.0}) {
    CHECK(std::abs(petz_renyi(rho, rho, a).value) < 1e-10);
    CHECK(std::abs(sandwiched_renyi(rho, rho, a).value) < 1e-10);
    CHECK(std::abs(geometric_renyi(rho, rho, a).value) < 1e-10);
  }
  CHECK(std::abs(relative_entropy(rho, rho).value) < 1e-10);
  CHECK(std::abs(bs_relative_entropy(rho, rho).value) < 1e-10);
  CHECK(std::abs(max_relative_entropy(rho, rho).value) < 1e-10);
  CHECK(std::abs(min_relative_entropy(rho, rho).value) < 1e-10);
}

TEST_CASE("scalar values") {
  auto half = HermitianOperator(identity(2) / 2.0);
  CHECK(petz_renyi(ket0(), half, 2.0).value == doctest::Approx(1.0));
  CHECK(min_relative_entropy(ket0(), half).value == doctest::Approx(1.0));
  auto phi = states::max_entangled(2).rho();
  auto quarter = HermitianOperator(identity(4) / 4.0);
  CHECK(relative_entropy(phi, quarter).value == doctest::Approx(2.0));
  CHECK(max_relative_entropy(phi, quarter).value == doctest::Approx(2.0));
}

TEST_CASE("support violations give infinity") {
  auto one = diag({0.0, 1.0});
  CHECK(petz_renyi(ket0(), one, 1.5).infinite);
  CHECK(sandwiched_renyi(ket0(), one, 2.0).infinite);
  CHECK(geometric_renyi(ket0(), one, 1.5).infinite);
  CHECK(relative_entropy(ket0(), one).infinite);
  CHECK(max_relative_entropy(ket0(), one).infinite);
  CHECK_FALSE(petz_renyi(ket0(), diag({0.5, 0.5}), 0.5).infinite);
}

TEST_CASE("commuting arguments match classical divergences") {
  std::vector<double> p{0.5, 0.3, 0.2}, q{0.2, 0.2, 0.6};
  auto rp = diag(p), rq = diag(q);
  for (double a : {0.3, 0.5, 0.9, 1.3, 2.0}) {
    double c = oracle::classical_renyi(p, q, a);
    CHECK(petz_renyi(rp, rq, a).value == doctest::Approx(c).epsilon(1e-10));
    CHECK(sandwiched_renyi(rp, rq, a).value == doctest::Approx(c).epsilon(1e-10));
    CHECK(geometric_renyi(rp, rq, a).value == doctest::Approx(c).epsilon(1e-10));
  }
  double kl = oracle::classical_kl(p, q);
  CHECK(relative_entropy(rp, rq).value == doctest::Approx(kl).epsilon(1e-10));
  CHECK(bs_relative_entropy(rp, rq).value == doctest::Approx(kl).epsilon(1e-10));
  CHECK(max_relative_entropy(rp, rq).value == doctest::Approx(oracle::classical_dmax(p, q)).epsilon(1e-10));
}

TEST_CASE("sandwiched at one half is the fidelity") {
  std::mt19937_64 rng(2);
  auto a = states::random_state(3, 2, rng);
  auto b = states::random_state(3, 3, rng);
  double f = linalg::root_fidelity(a, b);
  CHECK(sandwiched_renyi(a, b, 0.5).value == doctest::Approx(-2.0 * std::log2(f)).epsilon(1e-9));
}

TEST_CASE("inequalities between families on random pairs") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto w = states::random_state(3, 3, rng);
    auto s = states::random_state(3, 3, rng);
    double d = relative_entropy(w, s).value;
    for (double a : {0.3, 0.6, 0.9})
      CHECK(a * petz_renyi(w, s, a).value <= sandwiched_renyi(w, s, a).value + 1e-9);
    for (double a : {1.2, 1.5, 2.0}) {
      CHECK(sandwiched_renyi(w, s, a).value <= petz_renyi(w, s, a).value + 1e-9);
      CHECK(sandwiched_renyi(w, s, a).value <= geometric_renyi(w, s, a).value + 1e-9);
    }
    CHECK(d <= bs_relative_entropy(w, s).value + 1e-9);
    CHECK(d <= max_relative_entropy(w, s).value + 1e-9);
    CHECK(min_relative_entropy(w, s).value <= sandwiched_renyi(w, s, 0.5).value + 1e-9);
    CHECK(d >= -1e-12);
    // Monotone in alpha.
    double prev = -1.0;
    for (double a : {0.5, 0.75, 1.0, 1.5, 2.0, 5.0}) {
      double v = sandwiched_renyi(w, s, a).value;
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
    CHECK(max_relative_entropy(w, s).value >= prev - 1e-9);
  }
}

TEST_CASE("limits of the sandwiched family") {
  std::mt19937_64 rng(4);
  auto w = states::random_state(3, 3, rng);
  auto s = states::random_state(3, 3, rng);
  double d = relative_entropy(w, s).value;
  CHECK(sandwiched_renyi(w, s, 1.0 - 1e-4).value <= d + 1e-9);
  CHECK(sandwiched_renyi(w, s, 1.0 + 1e-4).value >= d - 1e-9);
  CHECK(std::abs(sandwiched_renyi(w, s, 1e3).value - max_relative_entropy(w, s).value) < 0.01);
  CHECK(sandwiched_renyi(w, s, 1.0).value == doctest::Approx(d));
}

TEST_CASE("data processing under random channels") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto w = states::random_state(2, 2, rng);
    auto s = states::random_state(2, 2, rng);
    auto ch = states::random_channel(2, 3, 2, rng);
    auto nw = states::apply_map(ch, w, 2, 1, states::Side::A);
    auto ns = states::apply_map(ch, s, 2, 1, states::Side::A);
    CHECK(relative_entropy(nw, ns).value <= relative_entropy(w, s).value + 1e-8);
    CHECK(petz_renyi(nw, ns, 1.5).value <= petz_renyi(w, s, 1.5).value + 1e-8);
    CHECK(sandwiched_renyi(nw, ns, 0.7).value <= sandwiched_renyi(w, s, 0.7).value + 1e-8);
    CHECK(geometric_renyi(nw, ns, 2.0).value <= geometric_renyi(w, s, 2.0).value + 1e-8);
  }
}

TEST_CASE("Renyi entropies") {
  auto mixed = HermitianOperator(identity(3) / 3.0);
  for (double a : {0.0, 0.5, 1.0, 2.0, std::numeric_limits<double>::infinity()})
    CHECK(renyi_entropy(mixed, a) == doctest::Approx(std::log2(3.0)));
  CHECK(renyi_entropy(diag({0.8, 0.2}), std::numeric_limits<double>::infinity()) ==
        doctest::Approx(-std::log2(0.8)));
  auto pure = states::pure_from_schmidt({1.0});
  CHECK(renyi_entropy(pure.rho(), 2.0) == doctest::Approx(0.0));
}

TEST_CASE("mutual information closed forms") {
  auto phi = states::max_entangled(3);
  CHECK(petz_mi_closed_form(phi, 0.7) == doctest::Approx(2.0 * std::log2(3.0)));
  auto psi = states::pure_from_schmidt({0.8, 0.2});
  std::vector<double> spec{0.8, 0.2};
  CHECK(petz_mi_closed_form(psi, 1.0) == doctest::Approx(2.0 * oracle::shannon_renyi(spec, 1.0)));
  CHECK(petz_mi_closed_form(psi, 0.5) == doctest::Approx(2.0 * oracle::shannon_renyi(spec, 3.0)));
  CHECK(sandwiched_mi_closed_form(psi, 2.0) ==
        doctest::Approx(2.0 * oracle::shannon_renyi(spec, 1.0 / 3.0)));
  CHECK(geometric_mi_closed_form(psi) == doctest::Approx(2.0));
}

TEST_CASE("brute-force mutual information reproduces the closed forms") {
  auto psi = states::pure_from_schmidt({0.7, 0.3}, 21);
  auto r = brute_mi(psi, Family::Petz, 0.5, 1, 3);
  CHECK(r.value == doctest::Approx(petz_mi_closed_form(psi, 0.5)).epsilon(1e-4));
  auto s = brute_mi(psi, Family::Sandwiched, 1.5, 1, 3);
  CHECK(s.value == doctest::Approx(sandwiched_mi_closed_form(psi, 1.5)).epsilon(1e-4));
}
