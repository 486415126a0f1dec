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

#include "uext/conic/problem.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace uext::conic {

namespace {

double conj_re(double a, double b) { return a * b; }
double conj_re(Complex a, Complex b) { return (std::conj(a) * b).real(); }

double conj_scalar(double a) { return a; }
Complex conj_scalar(Complex a) { return std::conj(a); }

double abs_scalar(double a) { return std::abs(a); }
double abs_scalar(Complex a) { return std::abs(a); }

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::MaxIterations: return "max_iterations";
    case Status::NumericalError: return "numerical_error";
  }
  return "unknown";
}

template <class Scalar>
void SparseHermitian<Scalar>::add_dense(int block, const Dense<Scalar>& m, double drop) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i <= j; ++i) {
      Scalar v = m(i, j);
      if (i == j) v = Scalar(std::real(v));
      if (abs_scalar(v) > drop) upper.push_back({block, static_cast<int>(i), static_cast<int>(j), v});
    }
}

template <class Scalar>
void SparseHermitian<Scalar>::add(int block, int row, int col, Scalar v) {
  if (row > col) {
    std::swap(row, col);
    v = conj_scalar(v);
  }
  upper.push_back({block, row, col, v});
}

template <class Scalar>
std::vector<Entry<Scalar>> SparseHermitian<Scalar>::expanded() const {
  std::map<std::tuple<int, int, int>, Scalar> acc;
  for (const auto& e : upper) {
    if (e.row == e.col) {
      acc[{e.block, e.col, e.row}] += Scalar(std::real(e.value));
    } else {
      acc[{e.block, e.col, e.row}] += e.value;
      acc[{e.block, e.row, e.col}] += conj_scalar(e.value);
    }
  }
  std::vector<Entry<Scalar>> out;
  out.reserve(acc.size());
  for (const auto& [key, v] : acc) {
    if (v == Scalar(0)) continue;
    out.push_back({std::get<0>(key), std::get<2>(key), std::get<1>(key), v});
  }
  return out;
}

template <class Scalar>
int ConicProblem<Scalar>::add_block(int dim, std::string block_name) {
  block_dims.push_back(dim);
  block_names.push_back(std::move(block_name));
  return static_cast<int>(block_dims.size()) - 1;
}

template <class Scalar>
int ConicProblem<Scalar>::add_constraint(SparseHermitian<Scalar> fi, double rhs) {
  f.push_back(std::move(fi));
  c.push_back(rhs);
  return static_cast<int>(c.size()) - 1;
}

template <class Scalar>
void ConicProblem<Scalar>::validate() const {
  if (f.size() != c.size()) throw std::invalid_argument("conic problem: |F| != |c|");
  auto check = [&](const SparseHermitian<Scalar>& m, const std::string& what) {
    for (const auto& e : m.upper) {
      if (e.block < 0 || e.block >= num_blocks())
        throw std::invalid_argument(what + ": block index out of range");
      int n = block_dims[e.block];
      if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n || e.row > e.col)
        throw std::invalid_argument(what + ": entry outside the upper triangle of its block");
      if (!std::isfinite(abs_scalar(e.value))) throw std::invalid_argument(what + ": non-finite");
    }
  };
  check(f0, "F0");
  for (size_t i = 0; i < f.size(); ++i) check(f[i], "F" + std::to_string(i + 1));
  for (double v : c)
    if (!std::isfinite(v)) throw std::invalid_argument("conic problem: non-finite c");
  for (int d : block_dims)
    if (d < 1) throw std::invalid_argument("conic problem: empty block");
}

template <class Scalar>
double inner(const SparseHermitian<Scalar>& a, const BlockMatrix<Scalar>& x) {
  double acc = 0.0;
  for (const auto& e : a.upper) {
    if (e.row == e.col)
      acc += std::real(e.value) * std::real(x[e.block](e.row, e.row));
    else
      acc += 2.0 * conj_re(e.value, x[e.block](e.row, e.col));
  }
  return acc;
}

template <class Scalar>
BlockMatrix<Scalar> zeros(const std::vector<int>& dims) {
  BlockMatrix<Scalar> out;
  for (int d : dims) out.push_back(Dense<Scalar>::Zero(d, d));
  return out;
}

template <class Scalar>
void accumulate(BlockMatrix<Scalar>& out, const SparseHermitian<Scalar>& f, double coeff) {
  for (const auto& e : f.upper) {
    out[e.block](e.row, e.col) += coeff * e.value;
    if (e.row != e.col) out[e.block](e.col, e.row) += coeff * conj_scalar(e.value);
  }
}

ConicProblem<double> embed(const ConicProblem<Complex>& p) {
  ConicProblem<double> r;
  r.name = p.name;
  r.sense = p.sense;
  r.offset = p.offset;
  r.c = p.c;
  for (int b = 0; b < p.num_blocks(); ++b) r.add_block(2 * p.block_dims[b], p.block_names[b]);
  auto convert = [&](const SparseHermitian<Complex>& m) {
    SparseHermitian<double> out;
    for (const auto& e : m.expanded()) {
      const int n = p.block_dims[e.block];
      const double re = 0.5 * e.value.real();
      const double im = 0.5 * e.value.imag();
      auto put = [&](int i, int j, double v) {
        if (v != 0.0 && i <= j) out.upper.push_back({e.block, i, j, v});
      };
      put(e.row, e.col, re);
      put(n + e.row, n + e.col, re);
      put(e.row, n + e.col, -im);
      put(n + e.row, e.col, im);
    }
    return out;
  };
  r.f0 = convert(p.f0);
  for (const auto& fi : p.f) r.f.push_back(convert(fi));
  return r;
}

namespace {

Dense<Complex> fold(const Dense<double>& m) {
  const Index n = m.rows() / 2;
  Dense<Complex> out(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      out(i, j) = Complex(0.5 * (m(i, j) + m(n + i, n + j)), 0.5 * (m(n + i, j) - m(i, n + j)));
  return out;
}

}  // namespace

ConicSolution<Complex> unembed(const ConicSolution<double>& s, const ConicProblem<Complex>& p) {
  ConicSolution<Complex> out;
  out.status = s.status;
  out.y = s.y;
  // X is recovered as the projection onto embedded form; S picks up a factor 2
  // because the real blocks carry half-weight coefficients.
  for (const auto& xb : s.x) out.x.push_back(fold(xb));
  for (const auto& sb : s.s) out.s.push_back(2.0 * fold(sb));
  out.primal_objective = s.primal_objective;
  out.dual_objective = s.dual_objective;
  out.gap = s.gap;
  out.relative_gap = s.relative_gap;
  out.primal_residual = s.primal_residual;
  out.dual_residual = s.dual_residual;
  out.iterations = s.iterations;
  out.dropped_rows = s.dropped_rows;
  out.message = s.message;
  (void)p;
  return out;
}

template <class Scalar>
PresolveResult presolve(const ConicProblem<Scalar>& p, double tol) {
  const int m = p.num_constraints();
  PresolveResult res;
  if (m == 0) return res;
  // Position map (block,row,col) -> list of (constraint, value) over the
  // upper triangle; off-diagonal pairs count twice in the inner product.
  std::unordered_map<long long, std::vector<std::pair<int, Scalar>>> pos;
  long long stride = 1;
  for (int d : p.block_dims) stride = std::max<long long>(stride, d);
  for (int i = 0; i < m; ++i)
    for (const auto& e : p.f[i].upper) {
      long long key = (static_cast<long long>(e.block) * stride + e.row) * stride + e.col;
      pos[key].push_back({i, e.value});
    }
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
  for (const auto& [key, list] : pos) {
    long long rc = key % (stride * stride);
    bool diag = (rc / stride) == (rc % stride);
    double w = diag ? 1.0 : 2.0;
    // Sum duplicates per constraint first.
    std::map<int, Scalar> merged;
    for (const auto& [i, v] : list) merged[i] += v;
    for (const auto& [i, vi] : merged)
      for (const auto& [j, vj] : merged)
        if (j >= i) gram(i, j) += w * conj_re(vi, vj);
  }
  gram = gram.selfadjointView<Eigen::Upper>();

  // Greedy pivoted Cholesky: accept the row with the largest remaining pivot.
  std::vector<double> diag(m);
  for (int i = 0; i < m; ++i) diag[i] = gram(i, i);
  const double dmax = *std::max_element(diag.begin(), diag.end());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  std::vector<bool> used(m, false);
  std::vector<int> order;
  for (int k = 0; k < m; ++k) {
    int piv = -1;
    double best = tol * std::max(dmax, 1e-300);
    for (int i = 0; i < m; ++i)
      if (!used[i] && diag[i] > best) {
        best = diag[i];
        piv = i;
      }
    if (piv < 0) break;
    used[piv] = true;
    const int col = static_cast<int>(order.size());
    order.push_back(piv);
    const double lpp = std::sqrt(diag[piv]);
    for (int i = 0; i < m; ++i) {
      if (used[i] && i != piv) continue;
      double v = gram(i, piv);
      for (int t = 0; t < col; ++t) v -= l(i, t) * l(piv, t);
      l(i, col) = v / lpp;
      if (i != piv) diag[i] -= l(i, col) * l(i, col);
    }
  }
  res.kept = order;
  std::sort(res.kept.begin(), res.kept.end());
  for (int i = 0; i < m; ++i)
    if (!used[i]) res.dropped.push_back(i);
  if (res.dropped.empty()) return res;

  // A dropped F_i = sum_k a_k F_k; feasibility of the X side needs c_i = a^T c_K.
  const int r = static_cast<int>(res.kept.size());
  Eigen::MatrixXd gkk(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) gkk(a, b) = gram(res.kept[a], res.kept[b]);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gkk);
  Eigen::VectorXd ck(r);
  for (int a = 0; a < r; ++a) ck(a) = p.c[res.kept[a]];
  double cscale = 1.0;
  for (double v : p.c) cscale = std::max(cscale, std::abs(v));
  for (int i : res.dropped) {
    Eigen::VectorXd g(r);
    for (int a = 0; a < r; ++a) g(a) = gram(res.kept[a], i);
    Eigen::VectorXd coef = ldlt.solve(g);
    double miss = std::abs(p.c[i] - coef.dot(ck)) / cscale;
    res.worst_inconsistency = std::max(res.worst_inconsistency, miss);
    if (miss > 1e-7) res.consistent = false;
  }
  return res;
}

namespace {

void write_value(std::ostream& os, double v) { os << v; }
void write_value(std::ostream& os, Complex v) { os << v.real() << ' ' << v.imag(); }

template <class Scalar>
void write_matrix(std::ostream& os, int index, const SparseHermitian<Scalar>& m) {
  for (const auto& e : m.upper) {
    os << index << ' ' << e.block + 1 << ' ' << e.row + 1 << ' ' << e.col + 1 << ' ';
    write_value(os, e.value);
    os << '\n';
  }
}

}  // namespace

template <class Scalar>
void write_problem(std::ostream& os, const ConicProblem<Scalar>& p) {
  constexpr bool is_complex = !std::is_same_v<Scalar, double>;
  os << std::setprecision(17);
  os << "uext-conic 1\n";
  os << "name " << (p.name.empty() ? "-" : p.name) << '\n';
  os << "scalar " << (is_complex ? "complex" : "real") << '\n';
  os << "sense " << (p.sense == Sense::Maximize ? "max" : "min") << '\n';
  os << "offset " << p.offset << '\n';
  os << "blocks " << p.num_blocks();
  for (int d : p.block_dims) os << ' ' << d;
  os << '\n';
  os << "constraints " << p.num_constraints() << '\n';
  os << "c";
  for (double v : p.c) os << ' ' << v;
  os << '\n';
  write_matrix(os, 0, p.f0);
  for (int i = 0; i < p.num_constraints(); ++i) write_matrix(os, i + 1, p.f[i]);
}

namespace {

template <class Scalar>
ConicProblem<Scalar> read_problem(std::istream& is) {
  constexpr bool is_complex = !std::is_same_v<Scalar, double>;
  ConicProblem<Scalar> p;
  std::string word;
  int version = 0;
  if (!(is >> word >> version) || word != "uext-conic" || version != 1)
    throw std::invalid_argument("problem dump: bad header");
  auto expect = [&](const char* key) {
    if (!(is >> word) || word != key)
      throw std::invalid_argument(std::string("problem dump: expected '") + key + "'");
  };
  expect("name");
  is >> p.name;
  if (p.name == "-") p.name.clear();
  expect("scalar");
  is >> word;
  if (word != (is_complex ? "complex" : "real"))
    throw std::invalid_argument("problem dump: scalar type mismatch");
  expect("sense");
  is >> word;
  p.sense = word == "max" ? Sense::Maximize : Sense::Minimize;
  expect("offset");
  is >> p.offset;
  expect("blocks");
  int nb = 0;
  is >> nb;
  for (int b = 0; b < nb; ++b) {
    int d = 0;
    is >> d;
    p.add_block(d, "B" + std::to_string(b + 1));
  }
  expect("constraints");
  int m = 0;
  is >> m;
  expect("c");
  p.c.resize(m);
  for (auto& v : p.c) is >> v;
  p.f.resize(m);
  int idx, blk, row, col;
  while (is >> idx >> blk >> row >> col) {
    Scalar v;
    if constexpr (is_complex) {
      double re, im;
      is >> re >> im;
      v = Complex(re, im);
    } else {
      is >> v;
    }
    if (idx < 0 || idx > m) throw std::invalid_argument("problem dump: matrix index out of range");
    auto& target = idx == 0 ? p.f0 : p.f[idx - 1];
    target.upper.push_back({blk - 1, row - 1, col - 1, v});
  }
  if (!is.eof()) throw std::invalid_argument("problem dump: malformed entry line");
  p.validate();
  return p;
}

}  // namespace

ConicProblem<double> read_real_problem(std::istream& is) { return read_problem<double>(is); }
ConicProblem<Complex> read_complex_problem(std::istream& is) { return read_problem<Complex>(is); }

template struct SparseHermitian<double>;
template struct SparseHermitian<Complex>;
template struct ConicProblem<double>;
template struct ConicProblem<Complex>;
template double inner(const SparseHermitian<double>&, const BlockMatrix<double>&);
template double inner(const SparseHermitian<Complex>&, const BlockMatrix<Complex>&);
template BlockMatrix<double> zeros<double>(const std::vector<int>&);
template BlockMatrix<Complex> zeros<Complex>(const std::vector<int>&);
template void accumulate(BlockMatrix<double>&, const SparseHermitian<double>&, double);
template void accumulate(BlockMatrix<Complex>&, const SparseHermitian<Complex>&, double);
template PresolveResult presolve(const ConicProblem<double>&, double);
template PresolveResult presolve(const ConicProblem<Complex>&, double);
template void write_problem(std::ostream&, const ConicProblem<double>&);
template void write_problem(std::ostream&, const ConicProblem<Complex>&);

}  // namespace uext::conic
