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

#include <vector>

#include "uext/linalg.hpp"
#include "uext/states.hpp"

namespace uext::conic {

using linalg::HermitianOperator;

/// Extensions sigma_ABB' >= 0 with tr_B' sigma = rho_AB, in reduced coordinates.
///
/// A and B are first restricted to the supports of rho_A and rho_B, and B'
/// to a copy of the restricted B. Every extension then lives on
/// supp(rho) (x) B', so it is written sigma = (V (x) 1) s (V (x) 1)^dagger with
/// V an isometry onto supp(rho) and s an r*d_B' square matrix (r = rank rho).
/// The constraint becomes tr_B' s = V^dagger rho V, which has a positive
/// definite right-hand side, and the free state is the map
/// Phi(s) = tr_B[(V (x) 1) s (V (x) 1)^dagger] on A B'.
class ExtensionProgram {
 public:
  explicit ExtensionProgram(const states::BipartiteState& rho);

  const states::BipartiteState& state() const { return rho_; }
  int ra() const { return ra_; }
  int rb() const { return rb_; }
  int rank() const { return r_; }
  int n() const { return ra_ * rb_; }         // order of operators on A B'
  int sigma_dim() const { return r_ * rb_; }  // order of s
  bool full_rank() const { return r_ == n(); }

  const Matrix& va() const { return va_; }
  const Matrix& vb() const { return vb_; }
  const Matrix& v() const { return v_; }
  /// rho in the compressed local coordinates (order n).
  const HermitianOperator& rho_local() const { return rho_c_; }
  /// V^dagger rho V (order r, positive definite).
  const HermitianOperator& rho_reduced() const { return rho_t_; }
  /// Projector onto supp(rho) in compressed coordinates.
  Matrix support_projector() const { return v_ * v_.adjoint(); }

  Matrix marginal(const Matrix& s) const;          // Phi
  Matrix marginal_adjoint(const Matrix& e) const;  // Phi^dagger
  /// tr_B' s (order r).
  Matrix reduced_trace(const Matrix& s) const;

  /// (V (x) 1) s (V (x) 1)^dagger on compressed A B B'.
  Matrix extension_local(const Matrix& s) const;
  /// Full-size extension on the original A B B'.
  Matrix extension(const Matrix& s) const;
  /// Operator on compressed A B' mapped back to the original A (x) B.
  Matrix embed_local(const Matrix& tau) const;
  /// Operator on the original A (x) B restricted to compressed coordinates.
  Matrix restrict_local(const Matrix& m) const;

  /// A strictly feasible point: rho~ (x) 1/d_B'.
  Matrix interior_point() const;

 private:
  states::BipartiteState rho_;
  int ra_ = 0, rb_ = 0, r_ = 0;
  Matrix va_, vb_, v_;
  HermitianOperator rho_c_, rho_t_;
};

/// Orthonormal basis of the Hermitian k x k matrices under Re tr[A^dagger B]:
/// E_ii, (E_ij + E_ji)/sqrt2, i(E_ij - E_ji)/sqrt2 for i < j.
std::vector<Matrix> hermitian_basis(int k);

/// Coordinates of a Hermitian matrix in hermitian_basis(k).
Eigen::VectorXd hermitian_coordinates(const Matrix& m);

/// Inverse of hermitian_coordinates.
Matrix from_hermitian_coordinates(const Eigen::VectorXd& x, int k);

}  // namespace uext::conic
