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

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace uext {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Thrown when operand shapes or subsystem dimensions are inconsistent.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operator required to be positive semidefinite is not.
class NotPositive : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a support inclusion needed by a formula does not hold, or a
/// function singular at zero is applied to a rank-deficient operator.
class SupportViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace uext

namespace uext::linalg {

// Tolerances shared by every module.
inline constexpr double kHermiticityTol = 1e-12;  // relative to max |entry|
inline constexpr double kPsdTol = 1e-9;           // relative to max(1, lambda_max)
inline constexpr double kSupportCutoff = 1e-9;    // relative to lambda_max

/// Square complex matrix that is Hermitian up to kHermiticityTol.
///
/// Construction validates the input and stores the exact Hermitian part
/// (M + M^dagger) / 2, so downstream spectral code never sees asymmetry.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const Matrix& m);

  /// Symmetrizes without checking. For results of expressions that are
  /// Hermitian by construction (e.g. U D U^dagger).
  static HermitianOperator symmetrized(const Matrix& m);

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;

 private:
  Matrix m_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

struct SpectralDecomposition {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // columns, unitary
};

SpectralDecomposition eigh(const HermitianOperator& h);

Matrix dagger(const Matrix& m);

/// Re tr[a^dagger b]; the real inner product used for Hermitian operators.
double inner(const Matrix& a, const Matrix& b);

double max_hermiticity_defect(const Matrix& m);

/// Kronecker product; `a` is the slow (outer) index.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(std::initializer_list<Matrix> factors);

/// Trace out the subsystems listed in `traced` from an operator on the
/// tensor product with dimensions `dims` (row-major, first subsystem slowest).
Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const int> traced);

/// Adjoint of partial_trace: inserts identities on the `traced` subsystems.
/// `dims` is the full (output) dimension list; `m` acts on the kept factors.
Matrix partial_trace_adjoint(const Matrix& m, std::span<const int> dims,
                             std::span<const int> traced);

/// Reorders tensor factors. Output subsystem k is input subsystem perm[k].
Matrix permute_subsystems(const Matrix& m, std::span<const int> dims, std::span<const int> perm);

/// Transposes subsystem `sys` in place of the tensor product.
Matrix partial_transpose(const Matrix& m, std::span<const int> dims, int sys);

Matrix identity(Index d);

/// Applies f to the spectrum. With `support_only`, eigenvalues at or below
/// cutoff * lambda_max map to exactly 0 (f is never evaluated there).
/// Without it, negative eigenvalues within kPsdTol are clamped to 0, and any
/// non-finite f value raises SupportViolation.
template <class F>
HermitianOperator apply_function(const SpectralDecomposition& sd, F&& f, bool support_only,
                                 double cutoff = kSupportCutoff);

template <class F>
HermitianOperator matrix_function(const HermitianOperator& h, F&& f, bool support_only,
                                  double cutoff = kSupportCutoff) {
  return apply_function(eigh(h), std::forward<F>(f), support_only, cutoff);
}

/// Projector onto the span of eigenvectors with eigenvalue > cutoff * lambda_max.
HermitianOperator support_projector(const HermitianOperator& h, double cutoff = kSupportCutoff);

/// Isometry (columns) spanning the support of h.
Matrix support_isometry(const HermitianOperator& h, double cutoff = kSupportCutoff);

/// True iff lambda_min >= -tol * max(1, lambda_max).
bool is_psd(const HermitianOperator& h, double tol = kPsdTol);

/// tr[P_tau^perp P_omega] > tol, i.e. omega has weight outside supp(tau).
bool support_exceeds(const HermitianOperator& omega, const HermitianOperator& tau,
                     double tol = 1e-8, double cutoff = kSupportCutoff);

/// || sqrt(rho) sqrt(sigma) ||_1.
double root_fidelity(const HermitianOperator& rho, const HermitianOperator& sigma);

double trace_norm(const Matrix& m);
double operator_norm(const HermitianOperator& h);

/// G with tr[G Delta] = d/dt tr[m f(sigma + t Delta)] at t = 0, from the first
/// divided differences of f on the spectrum of sigma.
HermitianOperator frechet_gradient(const HermitianOperator& sigma, const HermitianOperator& m,
                                   const std::function<double(double)>& f,
                                   const std::function<double(double)>& fprime);

/// G with tr[G Delta] = d/dt tr[rho ln(sigma + t Delta)] at t = 0, natural log.
/// Requires supp(rho) within supp(sigma).
HermitianOperator log_frechet_gradient(const HermitianOperator& sigma,
                                       const HermitianOperator& rho);

/// G with tr[G Delta] = d/dt tr[m (sigma + t Delta)^p] at t = 0. The power is
/// taken on supp(sigma); for p <= 0 supp(m) must lie within supp(sigma).
HermitianOperator power_frechet_gradient(const HermitianOperator& sigma,
                                         const HermitianOperator& m, double p);

/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
Matrix random_unitary(Index d, std::mt19937_64& rng);

/// d x k matrix of i.i.d. standard complex Gaussians.
Matrix ginibre(Index d, Index k, std::mt19937_64& rng);

// ---------------------------------------------------------------------------

template <class F>
HermitianOperator apply_function(const SpectralDecomposition& sd, F&& f, bool support_only,
                                 double cutoff) {
  const auto& lam = sd.eigenvalues;
  const Index n = lam.size();
  const double lmax = n > 0 ? lam(0) : 0.0;
  RealVector fl(n);
  for (Index i = 0; i < n; ++i) {
    double x = lam(i);
    if (support_only) {
      fl(i) = x > cutoff * lmax && x > 0.0 ? static_cast<double>(f(x)) : 0.0;
      continue;
    }
    if (x < 0.0 && -x <= kPsdTol * std::max(1.0, lmax)) x = 0.0;
    fl(i) = static_cast<double>(f(x));
    if (!std::isfinite(fl(i))) {
      throw SupportViolation("matrix function is singular on the spectrum (eigenvalue " +
                             std::to_string(x) + "); use support_only");
    }
  }
  const Matrix& u = sd.eigenvectors;
  return HermitianOperator::symmetrized(u * fl.asDiagonal() * u.adjoint());
}

}  // namespace uext::linalg
