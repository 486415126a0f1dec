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

#include "uext/conic/problem.hpp"

namespace uext::conic {

/// Constraint matrices in the layout the Schur kernels read: both triangles,
/// grouped by block.
template <class Scalar>
struct SchurOperands {
  struct Item {
    int row;
    int col;
    Scalar value;
  };
  std::vector<int> block_dims;
  // mats[i][b] lists the entries of F_i in block b.
  std::vector<std::vector<std::vector<Item>>> mats;
  std::vector<long> nnz;

  SchurOperands() = default;
  SchurOperands(const std::vector<int>& dims, const std::vector<const SparseHermitian<Scalar>*>& f);
  int size() const { return static_cast<int>(mats.size()); }
};

/// H_ij = <F_i, Q F_j Q> for Hermitian block-diagonal Q.
///
/// Per column j this picks the cheaper of a dense product T = Q F_j Q followed
/// by sparse dots, or a fully sparse double sum. Columns are distributed over
/// OpenMP threads when `parallel` is set; every entry is produced by exactly
/// one thread in a fixed order, so the result does not depend on the thread
/// count.
template <class Scalar>
void assemble_schur(const SchurOperands<Scalar>& ops, const BlockMatrix<Scalar>& q,
                    Eigen::MatrixXd& h, bool parallel = true);

/// Straightforward serial reference: dense Q F_j Q for every column.
template <class Scalar>
void assemble_schur_reference(const SchurOperands<Scalar>& ops, const BlockMatrix<Scalar>& q,
                              Eigen::MatrixXd& h);

/// (<F_i, U>)_i for dense block-diagonal U.
template <class Scalar>
Eigen::VectorXd apply_adjoint(const SchurOperands<Scalar>& ops, const BlockMatrix<Scalar>& u);

/// sum_i x_i F_i.
template <class Scalar>
BlockMatrix<Scalar> apply_forward(const SchurOperands<Scalar>& ops, const Eigen::VectorXd& x);

int max_threads();

}  // namespace uext::conic
