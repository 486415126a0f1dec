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

#include <iosfwd>
#include <string>
#include <vector>

#include "uext/linalg.hpp"

namespace uext::conic {

// Block-diagonal SDP in SDPA standard form over Scalar = double (real
// symmetric blocks) or Complex (Hermitian blocks):
//
//   X side:  maximize <F0, X>  s.t. <Fi, X> = c_i (i = 1..m),  X >= 0
//   y side:  minimize c^T y    s.t. S = sum_i y_i Fi - F0 >= 0
//
// with <A, B> = Re tr[A^dagger B]. Both sides are always solved together; the
// sense only records which one is the modelled ("natural") problem.

enum class Sense { Maximize, Minimize };

enum class Status { Optimal, Infeasible, Unbounded, MaxIterations, NumericalError };

std::string to_string(Status s);

template <class Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using BlockMatrix = std::vector<Dense<Scalar>>;

template <class Scalar>
struct Entry {
  int block = 0;
  int row = 0;
  int col = 0;
  Scalar value{};
};

/// Hermitian block-diagonal matrix stored as its upper triangle (row <= col).
template <class Scalar>
struct SparseHermitian {
  std::vector<Entry<Scalar>> upper;

  /// Appends the nonzero upper-triangle entries of a dense Hermitian block.
  void add_dense(int block, const Dense<Scalar>& m, double drop = 0.0);
  void add(int block, int row, int col, Scalar v);
  bool empty() const { return upper.empty(); }
  /// Both triangles, merged and sorted by (block, col, row).
  std::vector<Entry<Scalar>> expanded() const;
};

template <class Scalar>
struct ConicProblem {
  std::string name;
  Sense sense = Sense::Maximize;
  std::vector<int> block_dims;
  std::vector<std::string> block_names;
  SparseHermitian<Scalar> f0;
  std::vector<SparseHermitian<Scalar>> f;  // F_1..F_m
  std::vector<double> c;                   // c_1..c_m
  double offset = 0.0;                     // added to both objectives

  int num_constraints() const { return static_cast<int>(c.size()); }
  int num_blocks() const { return static_cast<int>(block_dims.size()); }
  int add_block(int dim, std::string name);
  /// Appends a constraint <F, X> = rhs and returns its index (0-based).
  int add_constraint(SparseHermitian<Scalar> fi, double rhs);
  /// Throws std::invalid_argument on inconsistent shapes or entries.
  void validate() const;
};

template <class Scalar>
struct ConicSolution {
  Status status = Status::NumericalError;
  BlockMatrix<Scalar> x;         // X side
  Eigen::VectorXd y;             // y side multipliers (original indexing)
  BlockMatrix<Scalar> s;         // y side slack
  double primal_objective = 0.0;  // natural side
  double dual_objective = 0.0;    // other side
  double gap = 0.0;               // |primal - dual|
  double relative_gap = 0.0;
  double primal_residual = 0.0;   // X side equality residual (max abs)
  double dual_residual = 0.0;     // y side PSD defect of S
  int iterations = 0;
  int dropped_rows = 0;
  std::string message;
};

/// Real embedding: every Hermitian block H of order n becomes
/// [[Re H, -Im H], [Im H, Re H]] of order 2n; coefficients are halved so the
/// objective values and c are unchanged.
ConicProblem<double> embed(const ConicProblem<Complex>& p);

/// Maps a solution of embed(p) back to the Hermitian blocks of p.
ConicSolution<Complex> unembed(const ConicSolution<double>& s, const ConicProblem<Complex>& p);

template <class Scalar>
double inner(const SparseHermitian<Scalar>& a, const BlockMatrix<Scalar>& x);

template <class Scalar>
BlockMatrix<Scalar> zeros(const std::vector<int>& dims);

/// Accumulates sum_k coeff_k * F_k into dense blocks.
template <class Scalar>
void accumulate(BlockMatrix<Scalar>& out, const SparseHermitian<Scalar>& f, double coeff);

struct PresolveResult {
  std::vector<int> kept;        // indices into the original constraints
  std::vector<int> dropped;
  bool consistent = true;       // false: dropped rows contradict kept ones
  double worst_inconsistency = 0.0;
};

/// Removes linearly dependent constraint matrices (pivoted Cholesky on the
/// Gram matrix, relative threshold `tol`) and checks the right-hand sides of
/// the dropped rows for consistency.
template <class Scalar>
PresolveResult presolve(const ConicProblem<Scalar>& p, double tol = 1e-10);

/// Plain-text dump; format described in docs/problem_format.md.
template <class Scalar>
void write_problem(std::ostream& os, const ConicProblem<Scalar>& p);

ConicProblem<double> read_real_problem(std::istream& is);
ConicProblem<Complex> read_complex_problem(std::istream& is);

}  // namespace uext::conic
