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

#include "uext/conic/extension.hpp"

#include <array>

namespace uext::conic {

using linalg::identity;
using linalg::kron;

ExtensionProgram::ExtensionProgram(const states::BipartiteState& rho) : rho_(rho) {
  va_ = linalg::support_isometry(rho.marginal_a());
  vb_ = linalg::support_isometry(rho.marginal_b());
  ra_ = static_cast<int>(va_.cols());
  rb_ = static_cast<int>(vb_.cols());
  // Keep exact identities when nothing is compressed so constraint matrices stay sparse.
  if (ra_ == rho.d_a()) va_ = identity(ra_);
  if (rb_ == rho.d_b()) vb_ = identity(rb_);
  Matrix w = kron(va_, vb_);
  rho_c_ = HermitianOperator::symmetrized(w.adjoint() * rho.matrix() * w);
  // Renormalize away the weight discarded by the support cutoff.
  rho_c_ = rho_c_ * (1.0 / rho_c_.trace());
  v_ = linalg::support_isometry(rho_c_);
  r_ = static_cast<int>(v_.cols());
  if (r_ == n()) v_ = identity(r_);
  rho_t_ = HermitianOperator::symmetrized(v_.adjoint() * rho_c_.matrix() * v_);
}

Matrix ExtensionProgram::extension_local(const Matrix& s) const {
  if (full_rank()) return s;
  Matrix w = kron(v_, identity(rb_));
  return w * s * w.adjoint();
}

Matrix ExtensionProgram::marginal(const Matrix& s) const {
  std::array<int, 3> dims{ra_, rb_, rb_};
  std::array<int, 1> tr{1};
  return linalg::partial_trace(extension_local(s), dims, tr);
}

Matrix ExtensionProgram::marginal_adjoint(const Matrix& e) const {
  std::array<int, 3> dims{ra_, rb_, rb_};
  std::array<int, 1> tr{1};
  Matrix lifted = linalg::partial_trace_adjoint(e, dims, tr);
  if (full_rank()) return lifted;
  Matrix w = kron(v_, identity(rb_));
  return w.adjoint() * lifted * w;
}

Matrix ExtensionProgram::reduced_trace(const Matrix& s) const {
  std::array<int, 2> dims{r_, rb_};
  std::array<int, 1> tr{1};
  return linalg::partial_trace(s, dims, tr);
}

Matrix ExtensionProgram::extension(const Matrix& s) const {
  Matrix w = kron({va_, vb_, vb_});
  return w * extension_local(s) * w.adjoint();
}

Matrix ExtensionProgram::embed_local(const Matrix& tau) const {
  Matrix w = kron(va_, vb_);
  return w * tau * w.adjoint();
}

Matrix ExtensionProgram::restrict_local(const Matrix& m) const {
  Matrix w = kron(va_, vb_);
  return w.adjoint() * m * w;
}

Matrix ExtensionProgram::interior_point() const {
  return kron(rho_t_.matrix(), identity(rb_) / static_cast<double>(rb_));
}

std::vector<Matrix> hermitian_basis(int k) {
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(k) * k);
  const double h = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < k; ++i) {
    Matrix e = Matrix::Zero(k, k);
    e(i, i) = 1.0;
    out.push_back(e);
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Matrix e = Matrix::Zero(k, k);
      e(i, j) = h;
      e(j, i) = h;
      out.push_back(e);
      Matrix f = Matrix::Zero(k, k);
      f(i, j) = Complex(0.0, h);
      f(j, i) = Complex(0.0, -h);
      out.push_back(f);
    }
  return out;
}

Eigen::VectorXd hermitian_coordinates(const Matrix& m) {
  const int k = static_cast<int>(m.rows());
  auto basis = hermitian_basis(k);
  Eigen::VectorXd x(basis.size());
  for (size_t p = 0; p < basis.size(); ++p) x(p) = linalg::inner(basis[p], m);
  return x;
}

Matrix from_hermitian_coordinates(const Eigen::VectorXd& x, int k) {
  auto basis = hermitian_basis(k);
  if (x.size() != static_cast<Index>(basis.size()))
    throw DimensionMismatch("hermitian coordinates: expected k^2 entries");
  Matrix m = Matrix::Zero(k, k);
  for (size_t p = 0; p < basis.size(); ++p) m += x(p) * basis[p];
  return m;
}

}  // namespace uext::conic
