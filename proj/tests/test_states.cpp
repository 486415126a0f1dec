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
#include "uext/states.hpp"

using namespace uext;
using namespace uext::states;
using linalg::HermitianOperator;
using linalg::identity;

namespace {

void check_state(const BipartiteState& s) {
  CHECK(s.rho().trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(linalg::is_psd(s.rho()));
}

}  // namespace

TEST_CASE("factories produce states") {
  check_state(max_entangled(3));
  check_state(isotropic(2, 0.3));
  check_state(erased(0.4));
  check_state(pure_from_schmidt({0.5, 0.3, 0.2}, 9));
  check_state(random_bipartite(2, 3, 4, 1));
  check_state(private_state(2, 4).state);
  CHECK_THROWS(isotropic(2, 1.5));
  CHECK_THROWS(erased(-0.1));
  CHECK_THROWS(pure_from_schmidt({0.5, 0.4}));
}

TEST_CASE("state validation") {
  Matrix m = identity(4) / 2.0;
  CHECK_THROWS(BipartiteState(HermitianOperator(m), 2, 2));
  Matrix neg = identity(4) / 4.0;
  neg(0, 0) = 0.5;
  neg(1, 1) = 0.0;
  neg(2, 2) = 0.75;
  neg(3, 3) = -0.25;
  CHECK_THROWS(BipartiteState(HermitianOperator(neg), 2, 2));
  CHECK_THROWS(BipartiteState(HermitianOperator(identity(4) / 4.0), 3, 2));
}

TEST_CASE("marginals") {
  auto phi = max_entangled(3);
  CHECK((phi.marginal_a().matrix() - identity(3) / 3.0).norm() < 1e-12);
  auto e = erased(0.3);
  Matrix ra = e.marginal_a().matrix();
  CHECK(ra(2, 2).real() == doctest::Approx(0.3));
  CHECK(ra(0, 0).real() == doctest::Approx(0.35));
  CHECK((e.marginal_b().matrix() - identity(2) / 2.0).norm() < 1e-12);
  auto iso = isotropic(2, 0.8);
  Matrix phi2 = max_entangled(2).matrix();
  CHECK((iso.matrix() * phi2).trace().real() == doctest::Approx(0.8));
}

TEST_CASE("pure states and purification") {
  auto psi = pure_from_schmidt({0.6, 0.4}, 3);
  Matrix m = psi.matrix();
  CHECK((m * m).trace().real() == doctest::Approx(1.0));
  auto sd = linalg::eigh(psi.marginal_a());
  CHECK(sd.eigenvalues(0) == doctest::Approx(0.6));
  std::mt19937_64 rng(4);
  auto rho = random_state(3, 2, rng);
  Vector v = purification(rho);
  CHECK(v.size() == 6);
  std::array<int, 2> dims{3, 2};
  std::array<int, 1> tr{1};
  Matrix back = linalg::partial_trace(v * v.adjoint(), dims, tr);
  CHECK((back - rho.matrix()).norm() < 1e-10);
}

TEST_CASE("tensor products keep the A:B cut") {
  auto s1 = random_bipartite(2, 2, 2, 5);
  auto s2 = random_bipartite(2, 3, 3, 6);
  auto t = tensor(s1, s2);
  CHECK(t.d_a() == 4);
  CHECK(t.d_b() == 6);
  CHECK((t.marginal_a().matrix() - linalg::kron(s1.marginal_a().matrix(), s2.marginal_a().matrix())).norm() < 1e-12);
  CHECK((t.marginal_b().matrix() - linalg::kron(s1.marginal_b().matrix(), s2.marginal_b().matrix())).norm() < 1e-12);
}

TEST_CASE("private states carry a key") {
  auto g = private_state(2, 17);
  CHECK(g.state.d_a() == 4);
  CHECK(g.state.d_b() == 4);
  Matrix u = g.twisting_unitary();
  CHECK((u.adjoint() * u - identity(u.rows())).norm() < 1e-10);
  // Measuring the key systems gives perfectly correlated uniform bits.
  std::array<int, 4> dims{2, 2, 2, 2};  // A A' B B'
  std::array<int, 2> shields{1, 3};
  Matrix key = linalg::partial_trace(g.state.matrix(), dims, shields);
  CHECK(key(0, 0).real() == doctest::Approx(0.5));
  CHECK(key(3, 3).real() == doctest::Approx(0.5));
  CHECK(std::abs(key(1, 1)) < 1e-12);
  CHECK(std::abs(key(2, 2)) < 1e-12);
  auto trivial = private_state(2);
  Matrix phi = max_entangled(2).matrix();
  CHECK((linalg::partial_trace(trivial.state.matrix(), dims, shields) - phi).norm() < 1e-12);
}

TEST_CASE("channels") {
  std::mt19937_64 rng(8);
  auto ch = random_channel(2, 3, 3, rng);
  CHECK(ch.is_trace_preserving());
  CHECK(depolarizing(2, 0.3).is_trace_preserving());
  auto s = random_bipartite(2, 2, 4, 3);
  auto out = apply_channel(ch, s, Side::B);
  CHECK(out.d_b() == 3);
  CHECK((out.marginal_a().matrix() - s.marginal_a().matrix()).norm() < 1e-12);
  auto full = apply_channel(depolarizing(2, 1.0), s, Side::A);
  CHECK((full.marginal_a().matrix() - identity(2) / 2.0).norm() < 1e-12);
}

TEST_CASE("one-way LOCC instruments") {
  std::mt19937_64 rng(12);
  auto branches = random_locc_branches(2, 2, 3, rng);
  auto inst = one_locc_instrument(branches);
  CHECK(inst.size() == 3);
  CHECK(coarse_grain(inst).is_trace_preserving());
  auto s = random_bipartite(2, 2, 2, 9);
  double total = 0.0;
  for (const auto& op : inst) total += apply_branch(op, s, 2, 2).probability;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  branches.pop_back();
  CHECK_THROWS(one_locc_instrument(branches));
}
