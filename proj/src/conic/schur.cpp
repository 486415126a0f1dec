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

#include "uext/conic/schur.hpp"

#ifdef UEXT_HAVE_OPENMP
#include <omp.h>
#endif

namespace uext::conic {

namespace {

inline double re_conj_mul(double a, double b) { return a * b; }
inline double re_conj_mul(Complex a, Complex b) {
  return a.real() * b.real() + a.imag() * b.imag();
}

template <class Scalar>
double sparse_dot(const std::vector<std::vector<typename SchurOperands<Scalar>::Item>>& fi,
                  const BlockMatrix<Scalar>& t) {
  double acc = 0.0;
  for (size_t b = 0; b < fi.size(); ++b)
    for (const auto& e : fi[b]) acc += re_conj_mul(e.value, t[b](e.row, e.col));
  return acc;
}

template <class Scalar>
void dense_column(const SchurOperands<Scalar>& ops, const BlockMatrix<Scalar>& q, int j,
                  BlockMatrix<Scalar>& t) {
  for (size_t b = 0; b < q.size(); ++b) {
    const auto& items = ops.mats[j][b];
    auto& tb = t[b];
    tb.setZero();
    if (items.empty()) continue;
    const Index n = q[b].rows();
    if (static_cast<Index>(items.size()) * 2 > n) {
      Dense<Scalar> fj = Dense<Scalar>::Zero(n, n);
      for (const auto& e : items) fj(e.row, e.col) += e.value;
      tb.noalias() = q[b] * fj * q[b];
    } else {
      // Q F Q = sum_(k,l) f_kl Q(:,k) Q(l,:)
      for (const auto& e : items) tb.noalias() += e.value * q[b].col(e.row) * q[b].row(e.col);
    }
  }
}

template <class Scalar>
double sparse_pair(const SchurOperands<Scalar>& ops, const BlockMatrix<Scalar>& q, int i, int j) {
  double acc = 0.0;
  for (size_t b = 0; b < q.size(); ++b) {
    const auto& fi = ops.mats[i][b];
    const auto& fj = ops.mats[j][b];
    if (fi.empty() || fj.empty()) continue;
    const auto& qb = q[b];
    for (const auto& a : fi) {
      Scalar s = 0;
      for (const auto& g : fj) s += g.value * qb(a.row, g.row) * qb(g.col, a.col);
      acc += re_conj_mul(a.value, s);
    }
  }
  return acc;
}

}  // namespace

int max_threads() {
#ifdef UEXT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class Scalar>
SchurOperands<Scalar>::SchurOperands(const std::vector<int>& dims,
                                     const std::vector<const SparseHermitian<Scalar>*>& f)
    : block_dims(dims) {
  mats.resize(f.size());
  nnz.resize(f.size(), 0);
  for (size_t i = 0; i < f.size(); ++i) {
    mats[i].resize(dims.size());
    for (const auto& e : f[i]->expanded()) {
      mats[i][e.block].push_back({e.row, e.col, e.value});
      ++nnz[i];
    }
  }
}

template <class Scalar>
void assemble_schur(const SchurOperands<Scalar>& ops, const BlockMatrix<Scalar>& q,
                    Eigen::MatrixXd& h, bool parallel) {
  const int m = ops.size();
  h.resize(m, m);
  long dense_unit = 0;
  for (int d : ops.block_dims) dense_unit += static_cast<long>(d) * d;
  std::vector<long> suffix(m + 1, 0);
  for (int i = m - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + ops.nnz[i];

  auto column = [&](int j, BlockMatrix<Scalar>& t) {
    // Lower triangle i >= j only.
    const long dense_cost = ops.nnz[j] * dense_unit + suffix[j];
    const long sparse_cost = ops.nnz[j] * suffix[j];
    if (sparse_cost <= dense_cost) {
      for (int i = j; i < m; ++i) h(i, j) = sparse_pair(ops, q, i, j);
    } else {
      dense_column(ops, q, j, t);
      for (int i = j; i < m; ++i) h(i, j) = sparse_dot<Scalar>(ops.mats[i], t);
    }
  };

#ifdef UEXT_HAVE_OPENMP
  if (parallel && m > 1) {
#pragma omp parallel
    {
      BlockMatrix<Scalar> t = zeros<Scalar>(ops.block_dims);
#pragma omp for schedule(dynamic, 1)
      for (int j = 0; j < m; ++j) column(j, t);
    }
  } else
#endif
  {
    (void)parallel;
    BlockMatrix<Scalar> t = zeros<Scalar>(ops.block_dims);
    for (int j = 0; j < m; ++j) column(j, t);
  }
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < j; ++i) h(i, j) = h(j, i);
}

template <class Scalar>
void assemble_schur_reference(const SchurOperands<Scalar>& ops, const BlockMatrix<Scalar>& q,
                              Eigen::MatrixXd& h) {
  const int m = ops.size();
  h.resize(m, m);
  for (int j = 0; j < m; ++j) {
    BlockMatrix<Scalar> t = zeros<Scalar>(ops.block_dims);
    for (size_t b = 0; b < q.size(); ++b) {
      Dense<Scalar> fj = Dense<Scalar>::Zero(q[b].rows(), q[b].cols());
      for (const auto& e : ops.mats[j][b]) fj(e.row, e.col) += e.value;
      t[b] = q[b] * fj * q[b];
    }
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      for (size_t b = 0; b < q.size(); ++b) {
        Dense<Scalar> f = Dense<Scalar>::Zero(q[b].rows(), q[b].cols());
        for (const auto& e : ops.mats[i][b]) f(e.row, e.col) += e.value;
        acc += std::real((f.conjugate().cwiseProduct(t[b])).sum());
      }
      h(i, j) = acc;
    }
  }
  h = 0.5 * (h + h.transpose()).eval();
}

template <class Scalar>
Eigen::VectorXd apply_adjoint(const SchurOperands<Scalar>& ops, const BlockMatrix<Scalar>& u) {
  Eigen::VectorXd out(ops.size());
  for (int i = 0; i < ops.size(); ++i) out(i) = sparse_dot<Scalar>(ops.mats[i], u);
  return out;
}

template <class Scalar>
BlockMatrix<Scalar> apply_forward(const SchurOperands<Scalar>& ops, const Eigen::VectorXd& x) {
  BlockMatrix<Scalar> out = zeros<Scalar>(ops.block_dims);
  for (int i = 0; i < ops.size(); ++i) {
    if (x(i) == 0.0) continue;
    for (size_t b = 0; b < out.size(); ++b)
      for (const auto& e : ops.mats[i][b]) out[b](e.row, e.col) += x(i) * e.value;
  }
  return out;
}

template struct SchurOperands<double>;
template struct SchurOperands<Complex>;
template void assemble_schur(const SchurOperands<double>&, const BlockMatrix<double>&,
                             Eigen::MatrixXd&, bool);
template void assemble_schur(const SchurOperands<Complex>&, const BlockMatrix<Complex>&,
                             Eigen::MatrixXd&, bool);
template void assemble_schur_reference(const SchurOperands<double>&, const BlockMatrix<double>&,
                                       Eigen::MatrixXd&);
template void assemble_schur_reference(const SchurOperands<Complex>&, const BlockMatrix<Complex>&,
                                       Eigen::MatrixXd&);
template Eigen::VectorXd apply_adjoint(const SchurOperands<double>&, const BlockMatrix<double>&);
template Eigen::VectorXd apply_adjoint(const SchurOperands<Complex>&, const BlockMatrix<Complex>&);
template BlockMatrix<double> apply_forward(const SchurOperands<double>&, const Eigen::VectorXd&);
template BlockMatrix<Complex> apply_forward(const SchurOperands<Complex>&, const Eigen::VectorXd&);

}  // namespace uext::conic
