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

#include "uext/divergences.hpp"

#include <algorithm>
#include <array>

#include <Eigen/SVD>

namespace uext::div {

using linalg::eigh;
using linalg::matrix_function;
using linalg::support_exceeds;

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void check_pair(const HermitianOperator& omega, const HermitianOperator& tau) {
  if (omega.dim() != tau.dim()) throw DimensionMismatch("divergence: dimension mismatch");
  if (!linalg::is_psd(omega) || !linalg::is_psd(tau))
    throw NotPositive("divergence: arguments must be positive semidefinite");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("divergence: alpha must be positive");
}

HermitianOperator power(const HermitianOperator& h, double p) {
  return matrix_function(h, [p](double x) { return std::pow(x, p); }, true);
}

HermitianOperator log2_on_support(const HermitianOperator& h) {
  return matrix_function(h, [](double x) { return std::log2(x); }, true);
}

DivergenceValue from_q(double q, double alpha, Family f) {
  if (!(q > 0.0)) {
    // Orthogonal supports at alpha < 1: tr vanishes and the divergence diverges.
    return DivergenceValue::inf(alpha, f);
  }
  return {std::log2(q) / (alpha - 1.0), false, alpha, f};
}

double lambda_max(const HermitianOperator& h) {
  auto sd = eigh(h);
  return sd.eigenvalues.size() ? sd.eigenvalues(0) : 0.0;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Petz: return "petz";
    case Family::Sandwiched: return "sandwiched";
    case Family::Geometric: return "geometric";
    case Family::Max: return "max";
    case Family::Min: return "min";
    case Family::RelEnt: return "relent";
    case Family::BS: return "bs";
  }
  return "unknown";
}

DivergenceValue relative_entropy(const HermitianOperator& omega, const HermitianOperator& tau) {
  check_pair(omega, tau);
  if (support_exceeds(omega, tau)) return DivergenceValue::inf(1.0, Family::RelEnt);
  double a = linalg::inner(omega.matrix(), log2_on_support(omega).matrix());
  double b = linalg::inner(omega.matrix(), log2_on_support(tau).matrix());
  return {a - b, false, 1.0, Family::RelEnt};
}

DivergenceValue bs_relative_entropy(const HermitianOperator& omega, const HermitianOperator& tau) {
  check_pair(omega, tau);
  if (support_exceeds(omega, tau)) return DivergenceValue::inf(1.0, Family::BS);
  auto sw = power(omega, 0.5);
  auto tinv = power(tau, -1.0);
  auto m = HermitianOperator::symmetrized(sw.matrix() * tinv.matrix() * sw.matrix());
  double v = linalg::inner(omega.matrix(), log2_on_support(m).matrix());
  return {v, false, 1.0, Family::BS};
}

DivergenceValue petz_renyi(const HermitianOperator& omega, const HermitianOperator& tau,
                           double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) {
    auto d = relative_entropy(omega, tau);
    d.family = Family::Petz;
    return d;
  }
  check_pair(omega, tau);
  if (alpha > 1.0 && support_exceeds(omega, tau)) return DivergenceValue::inf(alpha, Family::Petz);
  double q = linalg::inner(power(omega, alpha).matrix(), power(tau, 1.0 - alpha).matrix());
  return from_q(q, alpha, Family::Petz);
}

DivergenceValue max_relative_entropy(const HermitianOperator& omega, const HermitianOperator& tau) {
  check_pair(omega, tau);
  if (support_exceeds(omega, tau)) return DivergenceValue::inf(kInf, Family::Max);
  auto ti = power(tau, -0.5);
  auto m = HermitianOperator::symmetrized(ti.matrix() * omega.matrix() * ti.matrix());
  double l = lambda_max(m);
  if (!(l > 0.0)) return {-kInf, false, kInf, Family::Max};
  return {std::log2(l), false, kInf, Family::Max};
}

DivergenceValue min_relative_entropy(const HermitianOperator& omega, const HermitianOperator& tau) {
  check_pair(omega, tau);
  auto p = linalg::support_projector(omega);
  double q = linalg::inner(p.matrix(), tau.matrix());
  if (!(q > 0.0)) return DivergenceValue::inf(0.0, Family::Min);
  return {-std::log2(q), false, 0.0, Family::Min};
}

DivergenceValue sandwiched_renyi(const HermitianOperator& omega, const HermitianOperator& tau,
                                 double alpha) {
  check_alpha(alpha);
  if (std::isinf(alpha)) {
    auto d = max_relative_entropy(omega, tau);
    d.family = Family::Sandwiched;
    return d;
  }
  if (alpha == 1.0) {
    auto d = relative_entropy(omega, tau);
    d.family = Family::Sandwiched;
    return d;
  }
  check_pair(omega, tau);
  if (alpha > 1.0 && support_exceeds(omega, tau))
    return DivergenceValue::inf(alpha, Family::Sandwiched);
  auto t = power(tau, (1.0 - alpha) / (2.0 * alpha));
  // The spectrum of t omega t is the squared singular values of t omega^1/2; the
  // largest one is factored out of log tr (.)^alpha so large alpha stays finite.
  Eigen::JacobiSVD<Matrix> svd(t.matrix() * power(omega, 0.5).matrix());
  const RealVector lam = svd.singularValues().cwiseAbs2();
  const double top = lam.size() ? lam(0) : 0.0;
  if (!(top > 0.0)) return DivergenceValue::inf(alpha, Family::Sandwiched);
  double acc = 0.0;
  for (Index i = 0; i < lam.size(); ++i)
    if (lam(i) > 0.0) acc += std::pow(lam(i) / top, alpha);
  return {(alpha * std::log2(top) + std::log2(acc)) / (alpha - 1.0), false, alpha, Family::Sandwiched};
}

DivergenceValue geometric_renyi(const HermitianOperator& omega, const HermitianOperator& tau,
                                double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) {
    auto d = bs_relative_entropy(omega, tau);
    d.family = Family::Geometric;
    return d;
  }
  if (alpha > 2.0) throw std::invalid_argument("geometric_renyi: alpha must lie in (0,1) u (1,2]");
  check_pair(omega, tau);
  if (support_exceeds(omega, tau)) return DivergenceValue::inf(alpha, Family::Geometric);
  auto ti = power(tau, -0.5);
  auto ts = power(tau, 0.5);
  auto m = HermitianOperator::symmetrized(ti.matrix() * omega.matrix() * ti.matrix());
  auto ma = power(m, alpha);
  double q = (ts.matrix() * ma.matrix() * ts.matrix()).trace().real();
  return from_q(q, alpha, Family::Geometric);
}

DivergenceValue divergence(Family f, const HermitianOperator& omega, const HermitianOperator& tau,
                           double alpha) {
  switch (f) {
    case Family::Petz: return petz_renyi(omega, tau, alpha);
    case Family::Sandwiched: return sandwiched_renyi(omega, tau, alpha);
    case Family::Geometric: return geometric_renyi(omega, tau, alpha);
    case Family::Max: return max_relative_entropy(omega, tau);
    case Family::Min: return min_relative_entropy(omega, tau);
    case Family::RelEnt: return relative_entropy(omega, tau);
    case Family::BS: return bs_relative_entropy(omega, tau);
  }
  throw std::invalid_argument("unknown divergence family");
}

double renyi_entropy(const RealVector& spectrum, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("renyi_entropy: alpha must be >= 0");
  const double lmax = spectrum.size() ? spectrum.maxCoeff() : 0.0;
  std::vector<double> p;
  for (Index i = 0; i < spectrum.size(); ++i)
    if (spectrum(i) > linalg::kSupportCutoff * lmax && spectrum(i) > 0.0) p.push_back(spectrum(i));
  if (p.empty()) throw std::invalid_argument("renyi_entropy: zero operator");
  if (alpha == 0.0) return std::log2(static_cast<double>(p.size()));
  if (std::isinf(alpha)) return -std::log2(lmax);
  if (alpha == 1.0) {
    double h = 0.0;
    for (double x : p) h -= x * std::log2(x);
    return h;
  }
  double s = 0.0;
  for (double x : p) s += std::pow(x, alpha);
  return std::log2(s) / (1.0 - alpha);
}

double renyi_entropy(const HermitianOperator& rho, double alpha) {
  return renyi_entropy(eigh(rho).eigenvalues, alpha);
}

RealVector schmidt_coefficients(const states::BipartiteState& psi) {
  return eigh(psi.marginal_a()).eigenvalues.cwiseMax(0.0);
}

double petz_mi_closed_form(const states::BipartiteState& psi, double alpha) {
  check_alpha(alpha);
  return 2.0 * renyi_entropy(schmidt_coefficients(psi), (2.0 - alpha) / alpha);
}

double sandwiched_mi_closed_form(const states::BipartiteState& psi, double alpha) {
  if (!(alpha > 0.5)) throw std::invalid_argument("sandwiched MI closed form needs alpha > 1/2");
  double beta = std::isinf(alpha) ? 0.0 : 1.0 / (2.0 * alpha - 1.0);
  return 2.0 * renyi_entropy(schmidt_coefficients(psi), beta);
}

double geometric_mi_closed_form(const states::BipartiteState& psi, double floor) {
  RealVector s = schmidt_coefficients(psi);
  int rank = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > floor) ++rank;
  return 2.0 * std::log2(static_cast<double>(rank));
}

namespace {

HermitianOperator sigma_from(const RealVector& theta, int d) {
  Matrix l(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      l(i, j) = Complex(theta(2 * (i * d + j)), theta(2 * (i * d + j) + 1));
  Matrix s = l * l.adjoint();
  double tr = s.trace().real();
  return HermitianOperator::symmetrized(s / tr);
}

}  // namespace

BruteMiResult brute_mi(const states::BipartiteState& psi, Family family, double alpha,
                       std::uint64_t seed, int starts) {
  const int db = psi.d_b();
  if (db > 4) throw std::invalid_argument("brute_mi: d_B must be at most 4");
  const auto rho_a = psi.marginal_a();
  const int np = 2 * db * db;
  BruteMiResult best;
  best.sigma_b = HermitianOperator::symmetrized(linalg::identity(db) / db);

  auto objective = [&](const RealVector& th) {
    ++best.evaluations;
    double n = th.squaredNorm();
    if (!(n > 1e-300) || !th.allFinite()) return kInf;
    auto s = sigma_from(th, db);
    auto tau = HermitianOperator::symmetrized(linalg::kron(rho_a.matrix(), s.matrix()));
    auto d = divergence(family, psi.rho(), tau, alpha);
    return d.infinite ? kInf : d.value;
  };

  auto gradient = [&](const RealVector& th, double f0) {
    RealVector g(np);
    for (int k = 0; k < np; ++k) {
      double h = 1e-6 * std::max(1.0, std::abs(th(k)));
      RealVector tp = th, tm = th;
      tp(k) += h;
      tm(k) -= h;
      double fp = objective(tp), fm = objective(tm);
      if (std::isfinite(fp) && std::isfinite(fm))
        g(k) = (fp - fm) / (2.0 * h);
      else if (std::isfinite(fp))
        g(k) = (fp - f0) / h;
      else if (std::isfinite(fm))
        g(k) = (f0 - fm) / h;
      else
        g(k) = 0.0;
    }
    return g;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  bool any_converged = false;
  for (int s = 0; s < starts; ++s) {
    RealVector th = RealVector::Zero(np);
    if (s == 0) {
      for (int i = 0; i < db; ++i) th(2 * (i * db + i)) = 1.0;
    } else {
      for (int k = 0; k < np; ++k) th(k) = nd(rng);
    }
    double f = objective(th);
    if (!std::isfinite(f)) continue;
    RealVector g = gradient(th, f);
    double step = 1.0;
    bool converged = false;
    RealVector th_prev, g_prev;
    for (int it = 0; it < 600; ++it) {
      double gn = g.norm();
      if (gn < 1e-9) {
        converged = true;
        break;
      }
      if (it > 0) {
        // Barzilai-Borwein initial step, then Armijo backtracking.
        RealVector sdiff = th - th_prev, ydiff = g - g_prev;
        double sy = sdiff.dot(ydiff);
        step = sy > 0.0 ? sdiff.squaredNorm() / sy : step * 2.0;
        step = std::clamp(step, 1e-8, 1e4);
      }
      double t = step;
      RealVector trial;
      double ft = kInf;
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        trial = th - t * g;
        ft = objective(trial);
        if (std::isfinite(ft) && ft <= f - 1e-4 * t * gn * gn) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) {
        converged = true;  // no further decrease resolvable in double precision
        break;
      }
      th_prev = th;
      g_prev = g;
      double change = f - ft;
      th = trial;
      f = ft;
      g = gradient(th, f);
      if (change < 1e-15 * std::max(1.0, std::abs(f))) {
        converged = true;
        break;
      }
    }
    any_converged = any_converged || converged;
    if (f < best.value) {
      best.value = f;
      best.sigma_b = sigma_from(th, db);
    }
  }
  best.converged = any_converged;
  return best;
}

}  // namespace uext::div
