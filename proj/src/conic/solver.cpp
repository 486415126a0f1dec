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

#include "uext/conic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "uext/conic/schur.hpp"

namespace uext::conic {

namespace {

template <class Scalar>
using Blocks = BlockMatrix<Scalar>;
using Vec = Eigen::VectorXd;

template <class Scalar>
double dot(const Blocks<Scalar>& a, const Blocks<Scalar>& b) {
  double acc = 0.0;
  for (size_t k = 0; k < a.size(); ++k) acc += std::real((a[k].conjugate().cwiseProduct(b[k])).sum());
  return acc;
}

template <class Scalar>
double norm(const Blocks<Scalar>& a) {
  return std::sqrt(std::max(0.0, dot(a, a)));
}

template <class Scalar>
void axpy(Blocks<Scalar>& y, double a, const Blocks<Scalar>& x) {
  for (size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}

template <class Scalar>
Blocks<Scalar> scaled(const Blocks<Scalar>& x, double a) {
  Blocks<Scalar> out = x;
  for (auto& b : out) b *= a;
  return out;
}

template <class Scalar>
void symmetrize(Blocks<Scalar>& x) {
  for (auto& b : x) b = (0.5 * (b + b.adjoint())).eval();
}

template <class Scalar>
double min_eig(const Dense<Scalar>& m) {
  Eigen::SelfAdjointEigenSolver<Dense<Scalar>> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

template <class Scalar>
double min_eig(const Blocks<Scalar>& x) {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& b : x) v = std::min(v, min_eig<Scalar>(b));
  return v;
}

// Any factor L with L L^dagger = m.
template <class Scalar>
Dense<Scalar> factor(const Dense<Scalar>& m) {
  Eigen::LLT<Dense<Scalar>> llt(m);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Dense<Scalar>> es(m);
  Vec ev = es.eigenvalues();
  const double floor = 1e-300 + 1e-30 * std::abs(ev.maxCoeff());
  for (Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), floor));
  return es.eigenvectors() * ev.asDiagonal();
}

// Nesterov-Todd scaling of one block: r with r^dag z r = r^-1 s r^-dag = diag(lambda).
template <class Scalar>
struct NtBlock {
  Dense<Scalar> r;
  Dense<Scalar> rinv;
  Vec lambda;
  Dense<Scalar> q;  // (r r^dag)^-1
};

template <class Scalar>
NtBlock<Scalar> nt_scaling(const Dense<Scalar>& s, const Dense<Scalar>& z) {
  Dense<Scalar> ls = factor(s);
  Dense<Scalar> lz = factor(z);
  Dense<Scalar> prod = lz.adjoint() * ls;
  Eigen::JacobiSVD<Dense<Scalar>> svd(prod, Eigen::ComputeFullU | Eigen::ComputeFullV);
  NtBlock<Scalar> nt;
  nt.lambda = svd.singularValues();
  const Index n = s.rows();
  Vec isq(n), sq(n);
  for (Index i = 0; i < n; ++i) {
    double l = std::max(nt.lambda(i), 1e-300);
    nt.lambda(i) = l;
    isq(i) = 1.0 / std::sqrt(l);
    sq(i) = std::sqrt(l);
  }
  const Dense<Scalar>& v = svd.matrixV();
  const Dense<Scalar>& u = svd.matrixU();
  nt.r = ls * v * isq.asDiagonal();
  // r^-1 = Lambda^-1/2 U^dag Lz^dag, from r^dag z r = Lambda.
  nt.rinv = isq.asDiagonal() * u.adjoint() * lz.adjoint();
  nt.q = nt.rinv.adjoint() * nt.rinv;
  return nt;
}

// u with lambda o u = v, where a o b = (ab + ba)/2 and lambda is diagonal.
template <class Scalar>
Dense<Scalar> lyap_div(const Vec& lambda, const Dense<Scalar>& v) {
  Dense<Scalar> u(v.rows(), v.cols());
  for (Index j = 0; j < v.cols(); ++j)
    for (Index i = 0; i < v.rows(); ++i) u(i, j) = 2.0 * v(i, j) / (lambda(i) + lambda(j));
  return u;
}

template <class Scalar>
double max_step(const Vec& lambda, const Dense<Scalar>& d) {
  Vec isq = lambda.cwiseSqrt().cwiseInverse();
  Dense<Scalar> m = isq.asDiagonal() * d * isq.asDiagonal();
  m = (0.5 * (m + m.adjoint())).eval();
  double e = min_eig<Scalar>(m);
  return e < 0.0 ? -1.0 / e : std::numeric_limits<double>::infinity();
}

template <class Scalar>
class Ipm {
 public:
  Ipm(const ConicProblem<Scalar>& p, const SolverOptions& opts) : p_(p), opts_(opts) {}

  ConicSolution<Scalar> run();

 private:
  Vec gt(const Blocks<Scalar>& z) const { return -apply_adjoint(ops_, z); }
  Blocks<Scalar> g(const Vec& x) const { return scaled(apply_forward(ops_, x), -1.0); }

  bool factor_schur();
  void kkt_solve(const Vec& bx, const Blocks<Scalar>& bz, Vec& dx, Blocks<Scalar>& dz) const;
  Blocks<Scalar> qxq(const Blocks<Scalar>& x) const {
    Blocks<Scalar> out(x.size());
    for (size_t k = 0; k < x.size(); ++k) out[k] = nt_[k].q * x[k] * nt_[k].q;
    return out;
  }
  Blocks<Scalar> pxp(const Blocks<Scalar>& x) const {
    Blocks<Scalar> out(x.size());
    for (size_t k = 0; k < x.size(); ++k) {
      Dense<Scalar> pk = nt_[k].r * nt_[k].r.adjoint();
      out[k] = pk * x[k] * pk;
    }
    return out;
  }
  ConicSolution<Scalar> finish(Status st, const std::string& msg);

  struct Snapshot {
    Vec x;
    Blocks<Scalar> s, z;
    double tau, kappa;
    int iteration;
  };

  const ConicProblem<Scalar>& p_;
  SolverOptions opts_;
  PresolveResult pre_;
  SchurOperands<Scalar> ops_;
  Vec c_;
  Blocks<Scalar> h_;
  std::vector<NtBlock<Scalar>> nt_;
  Eigen::MatrixXd schur_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
  bool use_ldlt_ = false;

  Vec x_;
  Blocks<Scalar> s_, z_;
  double tau_ = 1.0, kappa_ = 1.0;
  int iters_ = 0;
  double pres_ = 0.0, dres_ = 0.0, relgap_ = 0.0;
};

template <class Scalar>
bool Ipm<Scalar>::factor_schur() {
  use_ldlt_ = false;
  llt_.compute(schur_);
  if (llt_.info() == Eigen::Success) return true;
  double dmax = schur_.diagonal().cwiseAbs().maxCoeff();
  for (double reg = 1e-14; reg <= 1e-6; reg *= 100.0) {
    Eigen::MatrixXd hr = schur_;
    hr.diagonal().array() += reg * std::max(dmax, 1.0);
    llt_.compute(hr);
    if (llt_.info() == Eigen::Success) return true;
  }
  ldlt_.compute(schur_);
  use_ldlt_ = true;
  return ldlt_.info() == Eigen::Success;
}

template <class Scalar>
void Ipm<Scalar>::kkt_solve(const Vec& bx, const Blocks<Scalar>& bz, Vec& dx,
                            Blocks<Scalar>& dz) const {
  // [0 G^T; G -P(.)P] [dx; dz] = [bx; bz], reduced to H dx = bx + G^T(Q bz Q).
  auto once = [&](const Vec& rx, const Blocks<Scalar>& rz, Vec& ox, Blocks<Scalar>& oz) {
    Vec rhs = rx + gt(qxq(rz));
    ox = use_ldlt_ ? Vec(ldlt_.solve(rhs)) : Vec(llt_.solve(rhs));
    Blocks<Scalar> t = g(ox);
    axpy(t, -1.0, rz);
    oz = qxq(t);
  };
  once(bx, bz, dx, dz);
  for (int it = 0; it < 2; ++it) {
    Vec ex = bx - gt(dz);
    Blocks<Scalar> ez = bz;
    axpy(ez, -1.0, g(dx));
    axpy(ez, 1.0, pxp(dz));
    double err = std::max(ex.lpNorm<Eigen::Infinity>(), norm(ez));
    double ref = std::max({1e-300, bx.lpNorm<Eigen::Infinity>(), norm(bz)});
    if (err <= 1e-14 * ref) break;
    Vec cx;
    Blocks<Scalar> cz;
    once(ex, ez, cx, cz);
    dx += cx;
    axpy(dz, 1.0, cz);
  }
}

template <class Scalar>
ConicSolution<Scalar> Ipm<Scalar>::finish(Status st, const std::string& msg) {
  ConicSolution<Scalar> sol;
  sol.status = st;
  sol.iterations = iters_;
  sol.message = msg;
  sol.dropped_rows = static_cast<int>(pre_.dropped.size());
  const int m = p_.num_constraints();
  sol.y = Vec::Zero(m);
  double ys = 1.0 / tau_, xs = 1.0 / tau_;
  const double cx = c_.dot(x_);
  const double hz = dot(h_, z_);
  if (st == Status::Infeasible || st == Status::Unbounded) {
    // Certificates are normalized rather than divided by tau.
    bool x_side_infeasible = (p_.sense == Sense::Maximize) == (st == Status::Infeasible);
    if (x_side_infeasible) {
      ys = 1.0 / -cx;
      xs = 0.0;
    } else {
      xs = 1.0 / -hz;
      ys = 0.0;
    }
  }
  for (size_t k = 0; k < pre_.kept.size(); ++k) sol.y(pre_.kept[k]) = ys * x_(k);
  sol.x = scaled(z_, xs);
  sol.s = scaled(s_, ys);
  const double yobj = p_.offset + [&] {
    double v = 0.0;
    for (int i = 0; i < m; ++i) v += p_.c[i] * sol.y(i);
    return v;
  }();
  const double xobj = p_.offset + inner(p_.f0, sol.x);
  if (p_.sense == Sense::Maximize) {
    sol.primal_objective = xobj;
    sol.dual_objective = yobj;
  } else {
    sol.primal_objective = yobj;
    sol.dual_objective = xobj;
  }
  sol.gap = std::abs(xobj - yobj);
  sol.relative_gap = sol.gap / std::max({1.0, std::abs(xobj), std::abs(yobj)});
  double pr = 0.0;
  for (int i = 0; i < m; ++i) pr = std::max(pr, std::abs(inner(p_.f[i], sol.x) - p_.c[i]));
  sol.primal_residual = pr;
  Blocks<Scalar> sy = zeros<Scalar>(p_.block_dims);
  for (int i = 0; i < m; ++i)
    if (sol.y(i) != 0.0) accumulate(sy, p_.f[i], sol.y(i));
  accumulate(sy, p_.f0, -1.0);
  double dr = 0.0;
  for (size_t k = 0; k < sy.size(); ++k)
    dr = std::max(dr, (sy[k] - sol.s[k]).cwiseAbs().maxCoeff());
  sol.dual_residual = dr;
  if (st == Status::Optimal) sol.s = sy;
  return sol;
}

template <class Scalar>
ConicSolution<Scalar> Ipm<Scalar>::run() {
  p_.validate();
  const int m = p_.num_constraints();
  if (opts_.presolve) {
    pre_ = presolve(p_, 1e-10);
  } else {
    for (int i = 0; i < m; ++i) pre_.kept.push_back(i);
  }
  std::vector<const SparseHermitian<Scalar>*> fk;
  for (int i : pre_.kept) fk.push_back(&p_.f[i]);
  ops_ = SchurOperands<Scalar>(p_.block_dims, fk);
  const int mk = static_cast<int>(pre_.kept.size());
  c_.resize(mk);
  for (int k = 0; k < mk; ++k) c_(k) = p_.c[pre_.kept[k]];
  h_ = zeros<Scalar>(p_.block_dims);
  accumulate(h_, p_.f0, -1.0);
  x_ = Vec::Zero(mk);

  const Status x_infeasible = p_.sense == Sense::Maximize ? Status::Infeasible : Status::Unbounded;
  const Status y_infeasible = p_.sense == Sense::Maximize ? Status::Unbounded : Status::Infeasible;
  if (!pre_.consistent) {
    s_ = zeros<Scalar>(p_.block_dims);
    z_ = zeros<Scalar>(p_.block_dims);
    auto sol = finish(Status::NumericalError, "");
    sol.status = x_infeasible;
    sol.message = "equality constraints are inconsistent";
    return sol;
  }

  int cone_rank = 0;
  for (int d : p_.block_dims) cone_rank += d;

  // Starting point from two least-squares problems with identity scaling.
  nt_.clear();
  for (int d : p_.block_dims) {
    NtBlock<Scalar> nb;
    nb.r = Dense<Scalar>::Identity(d, d);
    nb.rinv = nb.r;
    nb.q = nb.r;
    nb.lambda = Vec::Ones(d);
    nt_.push_back(nb);
  }
  {
    Blocks<Scalar> id;
    for (int d : p_.block_dims) id.push_back(Dense<Scalar>::Identity(d, d));
    assemble_schur(ops_, id, schur_, opts_.parallel);
  }
  if (mk > 0 && !factor_schur()) return finish(Status::NumericalError, "singular Gram matrix");
  {
    Vec dx;
    Blocks<Scalar> dz;
    kkt_solve(Vec::Zero(mk), h_, dx, dz);
    x_ = dx;
    s_ = scaled(dz, -1.0);
    kkt_solve(-c_, zeros<Scalar>(p_.block_dims), dx, dz);
    z_ = dz;
  }
  auto shift = [&](Blocks<Scalar>& v) {
    double a = -min_eig(v);
    double nv = std::max(1.0, norm(v));
    if (a >= -1e-8 * nv) {
      for (auto& b : v) b += (1.0 + a) * Dense<Scalar>::Identity(b.rows(), b.cols());
    }
  };
  symmetrize(s_);
  symmetrize(z_);
  shift(s_);
  shift(z_);
  tau_ = 1.0;
  kappa_ = 1.0;

  const double resx0 = std::max(1.0, c_.norm());
  const double resz0 = std::max(1.0, norm(h_));
  const size_t nb = p_.block_dims.size();

  double best_score = std::numeric_limits<double>::infinity();
  Snapshot best{x_, s_, z_, tau_, kappa_, 0};
  auto restore = [&](const Snapshot& b) {
    x_ = b.x;
    s_ = b.s;
    z_ = b.z;
    tau_ = b.tau;
    kappa_ = b.kappa;
    iters_ = b.iteration;
  };
  for (iters_ = 0; iters_ <= opts_.max_iterations; ++iters_) {
    const Vec rx = gt(z_) + tau_ * c_;
    Blocks<Scalar> rz = s_;
    axpy(rz, 1.0, g(x_));
    axpy(rz, -tau_, h_);
    const double cx = c_.dot(x_);
    const double hz = dot(h_, z_);
    const double rt = kappa_ + cx + hz;
    const double sz = dot(s_, z_);
    const double mu = (sz + tau_ * kappa_) / (cone_rank + 1);

    const double pcost = cx / tau_;
    const double dcost = -hz / tau_;
    const double gap = sz / (tau_ * tau_);
    pres_ = norm(rz) / tau_ / resz0;
    dres_ = rx.norm() / tau_ / resx0;
    relgap_ = std::max(std::abs(pcost - dcost), gap) /
              std::max({1.0, std::abs(pcost), std::abs(dcost)});
    const double pinf = hz < 0.0 ? gt(z_).norm() / resx0 / -hz : std::numeric_limits<double>::infinity();
    Blocks<Scalar> gxs = g(x_);
    axpy(gxs, 1.0, s_);
    const double dinf = cx < 0.0 ? norm(gxs) / resz0 / -cx : std::numeric_limits<double>::infinity();

    if (pres_ <= opts_.feas_tol && dres_ <= opts_.feas_tol && relgap_ <= opts_.gap_tol)
      return finish(Status::Optimal, "");
    if (hz < 0.0 && pinf <= opts_.feas_tol) return finish(y_infeasible, "y-side infeasibility certificate");
    if (cx < 0.0 && dinf <= opts_.feas_tol) return finish(x_infeasible, "X-side infeasibility certificate");
    const double score = std::max({pres_, dres_, relgap_});
    if (score < best_score) {
      best_score = score;
      best = {x_, s_, z_, tau_, kappa_, iters_};
    } else if (best_score <= 1e3 * opts_.gap_tol && score > 1e4 * best_score) {
      // Round-off has taken over near the boundary; fall back to the best iterate.
      restore(best);
      return finish(Status::MaxIterations, "iterates diverged after reaching near-optimality");
    }
    if (iters_ == opts_.max_iterations) break;

    nt_.resize(nb);
    for (size_t k = 0; k < nb; ++k) nt_[k] = nt_scaling<Scalar>(s_[k], z_[k]);
    assemble_schur(ops_, [&] {
      Blocks<Scalar> q;
      for (const auto& t : nt_) q.push_back(t.q);
      return q;
    }(), schur_, opts_.parallel);
    if (mk > 0 && !factor_schur()) return finish(Status::NumericalError, "Schur complement factorization failed");

    Vec x1;
    Blocks<Scalar> z1;
    kkt_solve(-c_, h_, x1, z1);
    const double denom = c_.dot(x1) + dot(h_, z1) - kappa_ / tau_;

    Blocks<Scalar> dsa(nb), dza(nb);
    double dtau_a = 0.0, dkap_a = 0.0, sigma = 0.0;
    double step = 0.0;
    Vec dx;
    Blocks<Scalar> dz, ds, dst, dzt;
    double dtau = 0.0, dkap = 0.0;
    for (int phase = 0; phase < 2; ++phase) {
      const double f = phase == 0 ? 1.0 : 1.0 - sigma;
      Blocks<Scalar> u(nb);
      for (size_t k = 0; k < nb; ++k) {
        const Vec& lam = nt_[k].lambda;
        Dense<Scalar> dsv = Dense<Scalar>::Zero(lam.size(), lam.size());
        dsv.diagonal() = (-lam.cwiseProduct(lam)).template cast<Scalar>();
        if (phase == 1) {
          dsv -= 0.5 * (dsa[k] * dza[k] + dza[k] * dsa[k]);
          dsv.diagonal().array() += Scalar(sigma * mu);
        }
        u[k] = lyap_div<Scalar>(lam, dsv);
      }
      double dk = -tau_ * kappa_;
      if (phase == 1) dk += -dtau_a * dkap_a + sigma * mu;

      Vec bx = -f * rx;
      Blocks<Scalar> bz = scaled(rz, -f);
      for (size_t k = 0; k < nb; ++k) bz[k] -= nt_[k].r * u[k] * nt_[k].r.adjoint();
      Vec x2;
      Blocks<Scalar> z2;
      kkt_solve(bx, bz, x2, z2);
      dtau = (-f * rt - dk / tau_ - c_.dot(x2) - dot(h_, z2)) / denom;
      dx = x2 + dtau * x1;
      dz = z2;
      axpy(dz, dtau, z1);
      dkap = (dk - kappa_ * dtau) / tau_;
      dzt.assign(nb, Dense<Scalar>());
      dst.assign(nb, Dense<Scalar>());
      ds.assign(nb, Dense<Scalar>());
      double amax = std::numeric_limits<double>::infinity();
      for (size_t k = 0; k < nb; ++k) {
        dzt[k] = nt_[k].r.adjoint() * dz[k] * nt_[k].r;
        dzt[k] = (0.5 * (dzt[k] + dzt[k].adjoint())).eval();
        dst[k] = u[k] - dzt[k];
        dst[k] = (0.5 * (dst[k] + dst[k].adjoint())).eval();
        ds[k] = nt_[k].r * dst[k] * nt_[k].r.adjoint();
        amax = std::min(amax, max_step<Scalar>(nt_[k].lambda, dst[k]));
        amax = std::min(amax, max_step<Scalar>(nt_[k].lambda, dzt[k]));
      }
      if (dtau < 0.0) amax = std::min(amax, -tau_ / dtau);
      if (dkap < 0.0) amax = std::min(amax, -kappa_ / dkap);
      if (phase == 0) {
        double aff = std::min(1.0, amax);
        sigma = std::pow(1.0 - aff, 3.0);
        dsa = dst;
        dza = dzt;
        dtau_a = dtau;
        dkap_a = dkap;
      } else {
        step = std::min(1.0, 0.99 * amax);
      }
    }
    if (opts_.verbose)
      std::fprintf(stderr, "%3d pres %.2e dres %.2e gap %.2e tau %.2e kappa %.2e mu %.2e step %.3f\n", iters_,
                   pres_, dres_, relgap_, tau_, kappa_, mu, step);
    if (!(step > 1e-12) || !std::isfinite(step)) {
      restore(best);
      return finish(best_score <= 1e3 * opts_.gap_tol ? Status::MaxIterations : Status::NumericalError,
                    "step length collapsed");
    }
    x_ += step * dx;
    axpy(s_, step, ds);
    axpy(z_, step, dz);
    symmetrize(s_);
    symmetrize(z_);
    tau_ += step * dtau;
    kappa_ += step * dkap;
  }
  restore(best);
  return finish(Status::MaxIterations, "iteration limit reached");
}

}  // namespace

template <class Scalar>
ConicSolution<Scalar> solve_interior_point(const ConicProblem<Scalar>& p,
                                           const SolverOptions& opts) {
  Ipm<Scalar> ipm(p, opts);
  return ipm.run();
}

ConicSolution<double> solve(const ConicProblem<double>& p, const SolverOptions& opts) {
  if (opts.backend) return opts.backend->solve(p, opts);
  return solve_interior_point(p, opts);
}

ConicSolution<Complex> solve(const ConicProblem<Complex>& p, const SolverOptions& opts) {
  if (opts.embed_real || opts.backend) return unembed(solve(embed(p), opts), p);
  return solve_interior_point(p, opts);
}

template ConicSolution<double> solve_interior_point(const ConicProblem<double>&,
                                                    const SolverOptions&);
template ConicSolution<Complex> solve_interior_point(const ConicProblem<Complex>&,
                                                     const SolverOptions&);

}  // namespace uext::conic
