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

#include "uext/states.hpp"

#include <array>
#include <map>
#include <numeric>

#include <Eigen/QR>

namespace uext::states {

using linalg::identity;
using linalg::kron;

BipartiteState::BipartiteState(HermitianOperator rho, int d_a, int d_b)
    : rho_(std::move(rho)), d_a_(d_a), d_b_(d_b) {
  if (d_a < 1 || d_b < 1) throw DimensionMismatch("subsystem dimensions must be positive");
  if (rho_.dim() != static_cast<Index>(d_a) * d_b)
    throw DimensionMismatch("state order " + std::to_string(rho_.dim()) + " != d_A*d_B = " +
                            std::to_string(d_a * d_b));
  if (std::abs(rho_.trace() - 1.0) > 1e-10)
    throw std::invalid_argument("state trace " + std::to_string(rho_.trace()) + " != 1");
  if (!linalg::is_psd(rho_)) throw NotPositive("state is not positive semidefinite");
}

HermitianOperator BipartiteState::marginal_a() const {
  std::array<int, 2> dims{d_a_, d_b_};
  std::array<int, 1> tr{1};
  return HermitianOperator::symmetrized(linalg::partial_trace(matrix(), dims, tr));
}

HermitianOperator BipartiteState::marginal_b() const {
  std::array<int, 2> dims{d_a_, d_b_};
  std::array<int, 1> tr{0};
  return HermitianOperator::symmetrized(linalg::partial_trace(matrix(), dims, tr));
}

namespace {

Matrix max_entangled_matrix(int d) {
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i * d + i, j * d + j) = 1.0 / d;
  return m;
}

BipartiteState normalized(const Matrix& m, int d_a, int d_b) {
  auto h = HermitianOperator::symmetrized(m);
  return BipartiteState(h * (1.0 / h.trace()), d_a, d_b);
}

}  // namespace

BipartiteState max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled: d must be at least 2");
  return BipartiteState(HermitianOperator::symmetrized(max_entangled_matrix(d)), d, d);
}

BipartiteState isotropic(int d, double r) {
  if (d < 2) throw std::invalid_argument("isotropic: d must be at least 2");
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("isotropic: r must lie in [0, 1]");
  Matrix phi = max_entangled_matrix(d);
  Matrix m = r * phi + (1.0 - r) * (identity(d * d) - phi) / static_cast<double>(d * d - 1);
  return BipartiteState(HermitianOperator::symmetrized(m), d, d);
}

BipartiteState erased(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("erased: eps must lie in [0, 1]");
  Matrix m = Matrix::Zero(6, 6);
  Matrix phi = max_entangled_matrix(2);
  // A' = span{|0>,|1>,|e>}; the qubit block occupies indices 0..3.
  m.topLeftCorner(4, 4) = (1.0 - eps) * phi;
  m(4, 4) = eps / 2.0;
  m(5, 5) = eps / 2.0;
  return BipartiteState(HermitianOperator::symmetrized(m), 3, 2);
}

BipartiteState pure_from_schmidt(const std::vector<double>& coeffs,
                                 std::optional<std::uint64_t> seed) {
  if (coeffs.empty()) throw std::invalid_argument("pure_from_schmidt: empty coefficient list");
  double sum = 0.0;
  for (double c : coeffs) {
    if (!(c >= 0.0)) throw std::invalid_argument("pure_from_schmidt: negative coefficient");
    sum += c;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw std::invalid_argument("pure_from_schmidt: coefficients must sum to 1");
  const int d = static_cast<int>(coeffs.size());
  Vector psi = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) psi(i * d + i) = std::sqrt(coeffs[i]);
  if (seed) {
    std::mt19937_64 rng(*seed);
    Matrix ua = linalg::random_unitary(d, rng);
    Matrix ub = linalg::random_unitary(d, rng);
    psi = kron(ua, ub) * psi;
  }
  return BipartiteState(HermitianOperator::symmetrized(psi * psi.adjoint()), d, d);
}

BipartiteState product_state(const HermitianOperator& rho_a, const HermitianOperator& rho_b) {
  return BipartiteState(HermitianOperator::symmetrized(kron(rho_a.matrix(), rho_b.matrix())),
                        static_cast<int>(rho_a.dim()), static_cast<int>(rho_b.dim()));
}

BipartiteState tensor(const BipartiteState& s1, const BipartiteState& s2) {
  Matrix m = kron(s1.matrix(), s2.matrix());
  std::array<int, 4> dims{s1.d_a(), s1.d_b(), s2.d_a(), s2.d_b()};
  std::array<int, 4> perm{0, 2, 1, 3};
  Matrix p = linalg::permute_subsystems(m, dims, perm);
  return BipartiteState(HermitianOperator::symmetrized(p), s1.d_a() * s2.d_a(),
                        s1.d_b() * s2.d_b());
}

BipartiteState local_unitary(const BipartiteState& s, const Matrix& u_a, const Matrix& u_b) {
  if (u_a.rows() != s.d_a() || u_b.rows() != s.d_b())
    throw DimensionMismatch("local_unitary: unitary dimensions do not match the state");
  Matrix u = kron(u_a, u_b);
  return BipartiteState(HermitianOperator::symmetrized(u * s.matrix() * u.adjoint()), s.d_a(),
                        s.d_b());
}

HermitianOperator random_state(int d, int rank, std::mt19937_64& rng) {
  if (d < 1 || rank < 1 || rank > d) throw std::invalid_argument("random_state: rank out of range");
  Matrix g = linalg::ginibre(d, rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return HermitianOperator::symmetrized(m);
}

HermitianOperator random_state(int d, int rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_state(d, rank, rng);
}

BipartiteState random_bipartite(int d_a, int d_b, int rank, std::uint64_t seed) {
  auto h = random_state(d_a * d_b, rank, seed);
  return normalized(h.matrix(), d_a, d_b);
}

Vector purification(const HermitianOperator& rho) {
  auto sd = linalg::eigh(rho);
  Matrix v = linalg::support_isometry(rho);
  const Index d = rho.dim();
  const Index r = v.cols();
  Vector psi = Vector::Zero(d * r);
  for (Index k = 0; k < r; ++k) {
    double lam = std::max(sd.eigenvalues(k), 0.0);
    Vector e = Vector::Zero(r);
    e(k) = 1.0;
    psi += std::sqrt(lam) * kron(sd.eigenvectors.col(k), e);
  }
  return psi;
}

Matrix PrivateState::twisting_unitary() const {
  const int ds = shield_a * shield_b;
  const int K = key_dim;
  Matrix u = Matrix::Zero(K * K * ds, K * K * ds);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      int block = i * K + j;
      u.block(block * ds, block * ds, ds, ds) = twist[block];
    }
  return u;
}

PrivateState private_state(int key_dim, const HermitianOperator& shield, int shield_a,
                           int shield_b, std::vector<Matrix> twist,
                           std::optional<std::uint64_t> seed) {
  if (key_dim < 2) throw std::invalid_argument("private_state: key dimension must be >= 2");
  const int ds = shield_a * shield_b;
  if (shield.dim() != ds) throw DimensionMismatch("private_state: shield order != d_A' d_B'");
  BipartiteState(shield, shield_a, shield_b);  // validates the shield
  const int K = key_dim;
  if (twist.empty()) {
    std::mt19937_64 rng(seed.value_or(0));
    for (int k = 0; k < K * K; ++k)
      twist.push_back(seed ? linalg::random_unitary(ds, rng) : identity(ds));
  }
  if (static_cast<int>(twist.size()) != K * K)
    throw DimensionMismatch("private_state: expected K^2 twisting unitaries");
  for (const auto& u : twist) {
    if (u.rows() != ds || u.cols() != ds)
      throw DimensionMismatch("private_state: twisting unitary does not act on A'B'");
    if ((u.adjoint() * u - identity(ds)).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("private_state: twist is not unitary");
  }
  PrivateState ps;
  ps.key_dim = K;
  ps.shield_a = shield_a;
  ps.shield_b = shield_b;
  ps.shield = shield;
  ps.twist = std::move(twist);
  Matrix u = ps.twisting_unitary();
  Matrix g = u * kron(max_entangled_matrix(K), shield.matrix()) * u.adjoint();
  std::array<int, 4> dims{K, K, shield_a, shield_b};
  std::array<int, 4> perm{0, 2, 1, 3};
  Matrix reordered = linalg::permute_subsystems(g, dims, perm);
  ps.state = BipartiteState(HermitianOperator::symmetrized(reordered), K * shield_a, K * shield_b);
  return ps;
}

PrivateState private_state(int key_dim, std::optional<std::uint64_t> seed) {
  auto shield = HermitianOperator::symmetrized(identity(4) / 4.0);
  return private_state(key_dim, shield, 2, 2, {}, seed);
}

double KrausChannel::tp_defect() const {
  if (kraus.empty()) return std::numeric_limits<double>::infinity();
  Matrix s = Matrix::Zero(in_dim(), in_dim());
  for (const auto& k : kraus) s += k.adjoint() * k;
  return (s - identity(in_dim())).cwiseAbs().maxCoeff();
}

KrausChannel identity_channel(int d) { return {{identity(d)}, "identity"}; }

KrausChannel unitary_channel(const Matrix& u, std::string label) { return {{u}, std::move(label)}; }

KrausChannel depolarizing(int d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing: p must lie in [0, 1]");
  KrausChannel ch;
  ch.label = "depolarizing";
  // p tr(rho) I/d = (p/d) sum_{ij} |i><j| rho |j><i|.
  ch.kraus.push_back(std::sqrt(1.0 - p) * identity(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Matrix k = Matrix::Zero(d, d);
      k(i, j) = std::sqrt(p / d);
      ch.kraus.push_back(k);
    }
  return ch;
}

KrausChannel random_channel(int d_in, int d_out, int n_kraus, std::mt19937_64& rng) {
  Matrix g = linalg::ginibre(static_cast<Index>(d_out) * n_kraus, d_in, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix v = qr.householderQ() * Matrix::Identity(g.rows(), d_in);
  KrausChannel ch;
  ch.label = "random";
  for (int k = 0; k < n_kraus; ++k) ch.kraus.push_back(v.middleRows(k * d_out, d_out));
  return ch;
}

HermitianOperator apply_map(const KrausChannel& ch, const HermitianOperator& rho, int d_a,
                            int d_b, Side side, int* out_a, int* out_b) {
  if (rho.dim() != static_cast<Index>(d_a) * d_b)
    throw DimensionMismatch("apply_map: operator order does not match d_A*d_B");
  const Index din = ch.in_dim();
  const Index dout = ch.out_dim();
  int oa = d_a, ob = d_b;
  Matrix out;
  switch (side) {
    case Side::A:
      if (din != d_a) throw DimensionMismatch("apply_map: channel input does not match A");
      oa = static_cast<int>(dout);
      out = Matrix::Zero(oa * d_b, oa * d_b);
      for (const auto& k : ch.kraus) {
        Matrix kk = kron(k, identity(d_b));
        out += kk * rho.matrix() * kk.adjoint();
      }
      break;
    case Side::B:
      if (din != d_b) throw DimensionMismatch("apply_map: channel input does not match B");
      ob = static_cast<int>(dout);
      out = Matrix::Zero(d_a * ob, d_a * ob);
      for (const auto& k : ch.kraus) {
        Matrix kk = kron(identity(d_a), k);
        out += kk * rho.matrix() * kk.adjoint();
      }
      break;
    case Side::Both:
      if (din != d_a * d_b) throw DimensionMismatch("apply_map: channel input does not match AB");
      out = Matrix::Zero(dout, dout);
      for (const auto& k : ch.kraus) out += k * rho.matrix() * k.adjoint();
      break;
  }
  if (out_a) *out_a = oa;
  if (out_b) *out_b = ob;
  return HermitianOperator::symmetrized(out);
}

BipartiteState apply_channel(const KrausChannel& ch, const BipartiteState& s, Side side) {
  if (side == Side::Both)
    throw std::invalid_argument("apply_channel: joint channels need output dims; use apply_branch");
  int oa = 0, ob = 0;
  auto out = apply_map(ch, s.rho(), s.d_a(), s.d_b(), side, &oa, &ob);
  double tr = out.trace();
  if (tr <= 0.0) throw std::invalid_argument("apply_channel: output has zero trace");
  return BipartiteState(out * (1.0 / tr), oa, ob);
}

std::vector<KrausChannel> one_locc_instrument(const std::vector<LoccBranch>& branches) {
  if (branches.empty()) throw std::invalid_argument("one_locc_instrument: no branches");
  const Index da = branches.front().f.in_dim();
  Matrix total = Matrix::Zero(da, da);
  std::map<int, KrausChannel> by_outcome;
  for (const auto& br : branches) {
    if (br.f.in_dim() != da) throw DimensionMismatch("one_locc_instrument: inconsistent A input");
    if (!br.g.is_trace_preserving())
      throw std::invalid_argument("one_locc_instrument: B-side map is not trace preserving");
    for (const auto& k : br.f.kraus) total += k.adjoint() * k;
    auto& ch = by_outcome[br.outcome];
    ch.label = "L^" + std::to_string(br.outcome);
    for (const auto& f : br.f.kraus)
      for (const auto& g : br.g.kraus) ch.kraus.push_back(kron(f, g));
  }
  if ((total - identity(da)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("one_locc_instrument: A-side maps do not sum to a TP map");
  std::vector<KrausChannel> out;
  for (auto& [y, ch] : by_outcome) out.push_back(std::move(ch));
  return out;
}

KrausChannel coarse_grain(const std::vector<KrausChannel>& instrument) {
  KrausChannel ch;
  ch.label = "coarse-grained";
  for (const auto& op : instrument)
    for (const auto& k : op.kraus) ch.kraus.push_back(k);
  return ch;
}

BranchResult apply_branch(const KrausChannel& op, const BipartiteState& s, int out_a, int out_b) {
  auto out = apply_map(op, s.rho(), s.d_a(), s.d_b(), Side::Both);
  if (out.dim() != static_cast<Index>(out_a) * out_b)
    throw DimensionMismatch("apply_branch: output order does not match given dims");
  BranchResult r;
  r.probability = out.trace();
  if (r.probability > 1e-14) r.state = BipartiteState(out * (1.0 / r.probability), out_a, out_b);
  return r;
}

std::vector<LoccBranch> random_locc_branches(int d_a, int d_b, int n_outcomes,
                                             std::mt19937_64& rng) {
  // A random isometry A -> A (x) X split into blocks gives CP maps summing to TP.
  KrausChannel split = random_channel(d_a, d_a, n_outcomes, rng);
  std::vector<LoccBranch> out;
  for (int x = 0; x < n_outcomes; ++x) {
    LoccBranch br;
    br.outcome = x;
    br.f = {{split.kraus[x]}, "F^" + std::to_string(x)};
    br.g = random_channel(d_b, d_b, 2, rng);
    out.push_back(std::move(br));
  }
  return out;
}

}  // namespace uext::states
