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

#include "uext/linalg.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace uext::linalg {

namespace {

std::vector<int> strides_of(std::span<const int> dims) {
  std::vector<int> st(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) st[k] = st[k + 1] * dims[k + 1];
  return st;
}

long product(std::span<const int> dims) {
  long p = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionMismatch("subsystem dimension must be positive");
    p *= d;
  }
  return p;
}

// Offsets of every multi-index over `subsystems` (in the order given),
// embedded in the full index space.
std::vector<Index> offsets(std::span<const int> dims, const std::vector<int>& strides,
                           const std::vector<int>& subsystems) {
  std::vector<Index> out{0};
  for (int s : subsystems) {
    std::vector<Index> next;
    next.reserve(out.size() * dims[s]);
    for (Index base : out)
      for (int v = 0; v < dims[s]; ++v) next.push_back(base + static_cast<Index>(v) * strides[s]);
    out.swap(next);
  }
  return out;
}

void split_subsystems(std::span<const int> dims, std::span<const int> traced,
                      std::vector<int>& kept, std::vector<int>& gone) {
  std::vector<bool> mark(dims.size(), false);
  for (int t : traced) {
    if (t < 0 || t >= static_cast<int>(dims.size()) || mark[t])
      throw DimensionMismatch("invalid traced subsystem index " + std::to_string(t));
    mark[t] = true;
  }
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) (mark[k] ? gone : kept).push_back(k);
}

void require_square(const Matrix& m, long order, const char* what) {
  if (m.rows() != m.cols() || m.rows() != order)
    throw DimensionMismatch(std::string(what) + ": matrix order " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " does not match dims product " +
                            std::to_string(order));
}

}  // namespace

HermitianOperator::HermitianOperator(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("Hermitian operator must be square");
  if (!m.allFinite()) throw std::invalid_argument("operator has non-finite entries");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (max_hermiticity_defect(m) > kHermiticityTol * scale)
    throw std::invalid_argument("operator is not Hermitian (defect " +
                                std::to_string(max_hermiticity_defect(m)) + ")");
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianOperator HermitianOperator::symmetrized(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("Hermitian operator must be square");
  HermitianOperator h;
  h.m_ = (m + m.adjoint()) * 0.5;
  return h;
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("operator sum: dimension mismatch");
  HermitianOperator h;
  h.m_ = m_ + o.m_;
  return h;
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("operator difference: dimension mismatch");
  HermitianOperator h;
  h.m_ = m_ - o.m_;
  return h;
}

HermitianOperator HermitianOperator::operator*(double s) const {
  HermitianOperator h;
  h.m_ = m_ * s;
  return h;
}

SpectralDecomposition eigh(const HermitianOperator& h) {
  const Index n = h.dim();
  SpectralDecomposition sd;
  if (n == 0) return sd;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  sd.eigenvalues = es.eigenvalues().reverse();
  sd.eigenvectors = es.eigenvectors().rowwise().reverse();
  return sd;
}

Matrix dagger(const Matrix& m) { return m.adjoint(); }

double inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("inner product: shape mismatch");
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

double max_hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron(std::initializer_list<Matrix> factors) {
  Matrix out = Matrix::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Matrix identity(Index d) { return Matrix::Identity(d, d); }

Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const int> traced) {
  require_square(m, product(dims), "partial_trace");
  std::vector<int> kept, gone;
  split_subsystems(dims, traced, kept, gone);
  auto st = strides_of(dims);
  auto base = offsets(dims, st, kept);
  auto off = offsets(dims, st, gone);
  const Index n = static_cast<Index>(base.size());
  Matrix out = Matrix::Zero(n, n);
  for (Index b = 0; b < n; ++b)
    for (Index a = 0; a < n; ++a) {
      Complex acc = 0.0;
      for (Index t : off) acc += m(base[a] + t, base[b] + t);
      out(a, b) = acc;
    }
  return out;
}

Matrix partial_trace_adjoint(const Matrix& m, std::span<const int> dims,
                             std::span<const int> traced) {
  std::vector<int> kept, gone;
  split_subsystems(dims, traced, kept, gone);
  auto st = strides_of(dims);
  auto base = offsets(dims, st, kept);
  auto off = offsets(dims, st, gone);
  const Index n = static_cast<Index>(base.size());
  if (m.rows() != n || m.cols() != n)
    throw DimensionMismatch("partial_trace_adjoint: operand order does not match kept dims");
  const long total = product(dims);
  Matrix out = Matrix::Zero(total, total);
  for (Index b = 0; b < n; ++b)
    for (Index a = 0; a < n; ++a)
      for (Index t : off) out(base[a] + t, base[b] + t) = m(a, b);
  return out;
}

Matrix permute_subsystems(const Matrix& m, std::span<const int> dims, std::span<const int> perm) {
  const long total = product(dims);
  require_square(m, total, "permute_subsystems");
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != n) throw DimensionMismatch("permutation length mismatch");
  std::vector<int> check(perm.begin(), perm.end());
  std::sort(check.begin(), check.end());
  for (int k = 0; k < n; ++k)
    if (check[k] != k) throw DimensionMismatch("not a permutation of subsystems");
  auto in_st = strides_of(dims);
  std::vector<int> out_dims(n);
  for (int k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  std::vector<int> order(perm.begin(), perm.end());
  // Walking output indices in row-major order enumerates input offsets
  // over subsystems perm[0], perm[1], ...
  auto map = offsets(dims, in_st, order);
  Matrix out(total, total);
  for (Index j = 0; j < total; ++j)
    for (Index i = 0; i < total; ++i) out(i, j) = m(map[i], map[j]);
  return out;
}

Matrix partial_transpose(const Matrix& m, std::span<const int> dims, int sys) {
  const long total = product(dims);
  require_square(m, total, "partial_transpose");
  if (sys < 0 || sys >= static_cast<int>(dims.size()))
    throw DimensionMismatch("partial_transpose: invalid subsystem");
  auto st = strides_of(dims);
  const Index s = st[sys];
  const Index d = dims[sys];
  Matrix out(total, total);
  for (Index j = 0; j < total; ++j) {
    Index dj = (j / s) % d;
    for (Index i = 0; i < total; ++i) {
      Index di = (i / s) % d;
      out(i - di * s + dj * s, j - dj * s + di * s) = m(i, j);
    }
  }
  return out;
}

HermitianOperator support_projector(const HermitianOperator& h, double cutoff) {
  Matrix v = support_isometry(h, cutoff);
  return HermitianOperator::symmetrized(v * v.adjoint());
}

Matrix support_isometry(const HermitianOperator& h, double cutoff) {
  auto sd = eigh(h);
  const Index n = sd.eigenvalues.size();
  if (n == 0) return Matrix(0, 0);
  const double lmax = sd.eigenvalues(0);
  Index r = 0;
  while (r < n && sd.eigenvalues(r) > cutoff * lmax && sd.eigenvalues(r) > 0.0) ++r;
  return sd.eigenvectors.leftCols(r);
}

bool is_psd(const HermitianOperator& h, double tol) {
  if (h.dim() == 0) return true;
  auto sd = eigh(h);
  double lmax = sd.eigenvalues(0);
  double lmin = sd.eigenvalues(sd.eigenvalues.size() - 1);
  return lmin >= -tol * std::max(1.0, lmax);
}

bool support_exceeds(const HermitianOperator& omega, const HermitianOperator& tau, double tol,
                     double cutoff) {
  if (omega.dim() != tau.dim()) throw DimensionMismatch("support check: dimension mismatch");
  Matrix p_tau = support_projector(tau, cutoff).matrix();
  Matrix outside = identity(tau.dim()) - p_tau;
  // Weight of omega on the kernel of tau, relative to its trace.
  double w = inner(outside, omega.matrix());
  return w > tol * std::max(1e-300, omega.trace());
}

double root_fidelity(const HermitianOperator& rho, const HermitianOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("root_fidelity: dimension mismatch");
  if (!is_psd(rho) || !is_psd(sigma)) throw NotPositive("root_fidelity: input is not PSD");
  auto sqrt_fn = [](double x) { return std::sqrt(x); };
  Matrix sr = matrix_function(rho, sqrt_fn, true).matrix();
  Matrix ss = matrix_function(sigma, sqrt_fn, true).matrix();
  return trace_norm(sr * ss);
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double operator_norm(const HermitianOperator& h) {
  if (h.dim() == 0) return 0.0;
  auto sd = eigh(h);
  return std::max(std::abs(sd.eigenvalues(0)), std::abs(sd.eigenvalues(sd.eigenvalues.size() - 1)));
}

HermitianOperator frechet_gradient(const HermitianOperator& sigma, const HermitianOperator& m,
                                   const std::function<double(double)>& f,
                                   const std::function<double(double)>& fprime) {
  if (sigma.dim() != m.dim()) throw DimensionMismatch("frechet_gradient: dimension mismatch");
  auto sd = eigh(sigma);
  const auto& lam = sd.eigenvalues;
  const Index n = lam.size();
  const double lmax = n > 0 ? std::max(lam(0), 0.0) : 0.0;
  std::vector<bool> live(n);
  RealVector fl(n);
  for (Index i = 0; i < n; ++i) {
    live[i] = lam(i) > kSupportCutoff * lmax && lam(i) > 0.0;
    fl(i) = live[i] ? f(lam(i)) : 0.0;
  }
  RealMatrix dd = RealMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!live[i] && !live[j]) continue;
      if (live[i] && live[j]) {
        double gap = lam(i) - lam(j);
        if (std::abs(gap) <= 1e-6 * std::max(lam(i), lam(j)))
          dd(i, j) = fprime(0.5 * (lam(i) + lam(j)));
        else
          dd(i, j) = (fl(i) - fl(j)) / gap;
      } else {
        // One eigenvalue on the kernel, where f is taken to vanish.
        double x = live[i] ? lam(i) : lam(j);
        double fx = live[i] ? fl(i) : fl(j);
        dd(i, j) = fx / x;
      }
    }
  }
  const Matrix& u = sd.eigenvectors;
  Matrix mt = u.adjoint() * m.matrix() * u;
  Matrix g = mt.cwiseProduct(dd.cast<Complex>());
  return HermitianOperator::symmetrized(u * g * u.adjoint());
}

HermitianOperator log_frechet_gradient(const HermitianOperator& sigma,
                                       const HermitianOperator& rho) {
  if (support_exceeds(rho, sigma))
    throw SupportViolation("log_frechet_gradient: supp(rho) is not contained in supp(sigma)");
  auto sd = eigh(sigma);
  const auto& lam = sd.eigenvalues;
  const Index n = lam.size();
  const double lmax = n > 0 ? std::max(lam(0), 0.0) : 0.0;
  RealMatrix dd = RealMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (!(lam(i) > kSupportCutoff * lmax && lam(i) > 0.0)) continue;
    for (Index j = 0; j < n; ++j) {
      if (!(lam(j) > kSupportCutoff * lmax && lam(j) > 0.0)) continue;
      double a = lam(i), b = lam(j);
      if (std::abs(a - b) <= 1e-6 * std::max(a, b))
        dd(i, j) = 2.0 / (a + b);
      else
        dd(i, j) = (std::log(a) - std::log(b)) / (a - b);
    }
  }
  const Matrix& u = sd.eigenvectors;
  Matrix mt = u.adjoint() * rho.matrix() * u;
  return HermitianOperator::symmetrized(u * mt.cwiseProduct(dd.cast<Complex>()) * u.adjoint());
}

HermitianOperator power_frechet_gradient(const HermitianOperator& sigma,
                                         const HermitianOperator& m, double p) {
  if (p <= 0.0 && support_exceeds(m, sigma))
    throw SupportViolation("power_frechet_gradient: supp(m) is not contained in supp(sigma)");
  return frechet_gradient(
      sigma, m, [p](double x) { return std::pow(x, p); },
      [p](double x) { return p * std::pow(x, p - 1.0); });
}

Matrix ginibre(Index d, Index k, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix g(d, k);
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < d; ++i) {
      double re = nd(rng);
      double im = nd(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

Matrix random_unitary(Index d, std::mt19937_64& rng) {
  Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) {
    Complex rii = r(i, i);
    double a = std::abs(rii);
    if (a > 0.0) q.col(i) *= rii / a;
  }
  return q;
}

}  // namespace uext::linalg
