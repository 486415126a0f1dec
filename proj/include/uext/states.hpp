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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uext/linalg.hpp"

namespace uext::states {

using linalg::HermitianOperator;

/// Density operator on A (x) B with A the slow tensor index.
class BipartiteState {
 public:
  BipartiteState() = default;
  /// Validates order, PSD-ness and unit trace (1e-10).
  BipartiteState(HermitianOperator rho, int d_a, int d_b);

  const HermitianOperator& rho() const noexcept { return rho_; }
  const Matrix& matrix() const noexcept { return rho_.matrix(); }
  int d_a() const noexcept { return d_a_; }
  int d_b() const noexcept { return d_b_; }
  int dim() const noexcept { return d_a_ * d_b_; }

  HermitianOperator marginal_a() const;
  HermitianOperator marginal_b() const;

 private:
  HermitianOperator rho_;
  int d_a_ = 0;
  int d_b_ = 0;
};

BipartiteState max_entangled(int d);
BipartiteState isotropic(int d, double r);

/// Erasure-channel Choi state on A' (dim 3) and B (dim 2); |e> = |2>.
BipartiteState erased(double eps);

/// sum_i sqrt(a_i) |i>|i>, optionally rotated by Haar-random local unitaries.
BipartiteState pure_from_schmidt(const std::vector<double>& coeffs,
                                 std::optional<std::uint64_t> seed = std::nullopt);

BipartiteState product_state(const HermitianOperator& rho_a, const HermitianOperator& rho_b);

/// (A1 A2):(B1 B2) tensor product of two bipartite states.
BipartiteState tensor(const BipartiteState& s1, const BipartiteState& s2);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger.
BipartiteState local_unitary(const BipartiteState& s, const Matrix& u_a, const Matrix& u_b);

/// Ginibre-induced state G G^dagger / tr with G of shape d x rank.
HermitianOperator random_state(int d, int rank, std::uint64_t seed);
HermitianOperator random_state(int d, int rank, std::mt19937_64& rng);

BipartiteState random_bipartite(int d_a, int d_b, int rank, std::uint64_t seed);

/// Vector on A (x) R with R of dimension rank(rho).
Vector purification(const HermitianOperator& rho);

struct PrivateState {
  BipartiteState state;           // cut (A A'):(B B')
  int key_dim = 0;                // K
  int shield_a = 0;               // d_A'
  int shield_b = 0;               // d_B'
  HermitianOperator shield;       // sigma on A'B'
  std::vector<Matrix> twist;      // U^{ij} at index i*K + j

  /// Controlled twisting unitary on the ordering A B A' B'.
  Matrix twisting_unitary() const;
};

/// Private state U (Phi^K (x) shield) U^dagger. With an empty `twist` and a
/// seed, twists are Haar random; with neither, every U^{ij} is the identity.
PrivateState private_state(int key_dim, const HermitianOperator& shield, int shield_a,
                           int shield_b, std::vector<Matrix> twist = {},
                           std::optional<std::uint64_t> seed = std::nullopt);

/// Key dimension K with maximally mixed qubit shields.
PrivateState private_state(int key_dim, std::optional<std::uint64_t> seed = std::nullopt);

struct KrausChannel {
  std::vector<Matrix> kraus;
  std::string label;

  Index in_dim() const { return kraus.empty() ? 0 : kraus.front().cols(); }
  Index out_dim() const { return kraus.empty() ? 0 : kraus.front().rows(); }
  /// || sum K^dagger K - I ||_max.
  double tp_defect() const;
  bool is_trace_preserving(double tol = 1e-9) const { return tp_defect() <= tol; }
};

enum class Side { A, B, Both };

KrausChannel identity_channel(int d);
KrausChannel unitary_channel(const Matrix& u, std::string label = "unitary");
/// rho -> (1-p) rho + p tr(rho) I/d.
KrausChannel depolarizing(int d, double p);
/// Stinespring dilation of a random isometry, `n_kraus` Kraus operators.
KrausChannel random_channel(int d_in, int d_out, int n_kraus, std::mt19937_64& rng);

/// Unnormalized output sum_k (K_k (x) I) rho (K_k (x) I)^dagger. For Side::Both
/// the channel acts on A (x) B as a single system.
HermitianOperator apply_map(const KrausChannel& ch, const HermitianOperator& rho, int d_a,
                            int d_b, Side side, int* out_a = nullptr, int* out_b = nullptr);

BipartiteState apply_channel(const KrausChannel& ch, const BipartiteState& s, Side side);

/// One branch (x, y) of a one-way LOCC instrument: a CP map on A with
/// classical outcome x announced to B, who applies channel g, and the
/// recorded outcome y.
struct LoccBranch {
  int outcome = 0;
  KrausChannel f;
  KrausChannel g;
};

/// Groups branches by y into the selective operations L^y = sum_x F (x) G.
/// The Kraus operators of L^y act on A (x) B.
std::vector<KrausChannel> one_locc_instrument(const std::vector<LoccBranch>& branches);

/// Sum of all outcome maps as one channel on A (x) B.
KrausChannel coarse_grain(const std::vector<KrausChannel>& instrument);

struct BranchResult {
  double probability = 0.0;
  std::optional<BipartiteState> state;  // empty when probability is zero
};

/// Applies a selective operation on A (x) B; output dims are given because an
/// operation may change them.
BranchResult apply_branch(const KrausChannel& op, const BipartiteState& s, int out_a, int out_b);

/// Random selective 1-LOCC instrument: A measures with `n_outcomes` random CP
/// maps, B applies an outcome-dependent random channel.
std::vector<LoccBranch> random_locc_branches(int d_a, int d_b, int n_outcomes,
                                             std::mt19937_64& rng);

}  // namespace uext::states
