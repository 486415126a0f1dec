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

#include "uext/applications.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include "uext/frank_wolfe.hpp"

#if UEXT_HAVE_OPENMP
#include <omp.h>
#endif

namespace uext::apps {

using linalg::HermitianOperator;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BoundReport overhead(Task task, const states::BipartiteState& rho, int count,
                     const measures::Options& opts, const std::string& label) {
  if (count < 1) throw std::invalid_argument("overhead bound: target count must be positive");
  auto e = measures::e_rel_u(rho, opts);
  BoundReport r;
  r.task = task;
  r.measure = "E^u";
  r.measure_value = e.value;
  r.state = label;
  r.diagnostics = e.diagnostics;
  if (e.value < kZeroMeasure) {
    r.infinite = true;
    r.value = kInf;
  } else {
    r.value = count / e.value;
  }
  return r;
}

BoundReport exact(Task task, const states::BipartiteState& rho, const measures::Options& opts,
                  const std::string& label) {
  auto e = measures::e_min_u(rho, opts);
  BoundReport r;
  r.task = task;
  r.measure = "E_min^u";
  r.measure_value = e.value;
  r.value = e.value;
  r.infinite = e.infinite;
  r.state = label;
  r.diagnostics = e.diagnostics;
  return r;
}

double inverse_or_inf(double x) { return x < kZeroMeasure ? kInf : 1.0 / x; }

void write_number(std::ostream& os, double v) {
  if (std::isinf(v)) {
    os << (v > 0 ? "inf" : "-inf");
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  os << buf;
}

}  // namespace

std::string to_string(Task t) {
  switch (t) {
    case Task::KeyOverhead: return "key-overhead";
    case Task::EntOverhead: return "ent-overhead";
    case Task::ExactKey: return "exact-key";
    case Task::ExactEnt: return "exact-ent";
    case Task::DetRate: return "det-rate";
  }
  return "?";
}

Task parse_task(const std::string& s) {
  for (Task t : {Task::KeyOverhead, Task::EntOverhead, Task::ExactKey, Task::ExactEnt, Task::DetRate})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown task: " + s);
}

BoundReport key_overhead_lower_bound(const states::BipartiteState& rho, int k,
                                     const measures::Options& opts, const std::string& label) {
  return overhead(Task::KeyOverhead, rho, k, opts, label);
}

BoundReport ent_overhead_lower_bound(const states::BipartiteState& rho, int m,
                                     const measures::Options& opts, const std::string& label) {
  return overhead(Task::EntOverhead, rho, m, opts, label);
}

BoundReport exact_key_upper_bound(const states::BipartiteState& rho, const measures::Options& opts,
                                  const std::string& label) {
  return exact(Task::ExactKey, rho, opts, label);
}

BoundReport exact_ent_upper_bound(const states::BipartiteState& rho, const measures::Options& opts,
                                  const std::string& label) {
  return exact(Task::ExactEnt, rho, opts, label);
}

double det_rate_to_ebit(const states::BipartiteState& psi) {
  return measures::pure_state_measures(psi, div::Family::Min, 0.0);
}

PrivateStateCheck private_state_bound_check(const states::PrivateState& gamma,
                                            const measures::Options& opts) {
  PrivateStateCheck c;
  c.log_k = std::log2(static_cast<double>(gamma.key_dim));
  auto emin = measures::e_min_u(gamma.state, opts);
  auto emax = measures::e_max_u(gamma.state, opts);
  auto fu = measures::unext_fidelity(gamma.state, opts);
  c.e_min = emin.value;
  c.e_max = emax.value;
  c.e_half = measures::sandwiched_half_u(fu);
  c.converged = emin.diagnostics.converged && emax.diagnostics.converged && fu.diagnostics.converged;
  return c;
}

double ree_erased(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("ree_erased: eps must lie in [0, 1]");
  return 1.0 - eps;
}

ReeWitness ree_erased_witness(double eps) {
  ReeWitness w;
  w.closed_form = ree_erased(eps);
  w.witness = Matrix::Zero(6, 6);
  w.witness(0, 0) = (1.0 - eps) / 2.0;  // |00>
  w.witness(3, 3) = (1.0 - eps) / 2.0;  // |11>
  w.witness(4, 4) = eps / 2.0;
  w.witness(5, 5) = eps / 2.0;
  auto rho = states::erased(eps);
  w.divergence = div::relative_entropy(rho.rho(), HermitianOperator::symmetrized(w.witness)).value;
  return w;
}

double ree_isotropic_qubit(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("ree_isotropic_qubit: r must lie in [0, 1]");
  if (r <= 0.5) return 0.0;
  auto rho = states::isotropic(2, r);
  auto d = [&](double s) {
    auto v = div::relative_entropy(rho.rho(), states::isotropic(2, s).rho());
    return v.infinite ? kInf : v.value;
  };
  // Separable isotropic qubit states are exactly those with s <= 1/2.
  double s = fw::golden_section(d, 0.0, 0.5, 1e-12);
  return std::max(0.0, d(s));
}

bool is_ppt(const states::BipartiteState& rho, double tol) {
  std::array<int, 2> dims{rho.d_a(), rho.d_b()};
  Matrix pt = linalg::partial_transpose(rho.matrix(), dims, 1);
  auto sd = linalg::eigh(HermitianOperator::symmetrized(pt));
  return sd.eigenvalues(sd.eigenvalues.size() - 1) >= -tol;
}

SweepFamily parse_family(const std::string& s) {
  if (s == "isotropic") return SweepFamily::Isotropic;
  if (s == "erased") return SweepFamily::Erased;
  throw std::invalid_argument("sweep family must be isotropic or erased: " + s);
}

std::vector<SweepRow> sweep(SweepFamily family, const std::vector<double>& grid,
                            const SweepOptions& opts) {
  std::vector<SweepRow> rows(grid.size());
  measures::Options mo = opts.measure;
  if (opts.jobs > 1) mo.solver.parallel = false;
  const int n = static_cast<int>(grid.size());
  std::vector<std::string> errors(grid.size());
#if UEXT_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, opts.jobs))
#endif
  for (int i = 0; i < n; ++i) {
    try {
      const double p = grid[i];
      auto rho = family == SweepFamily::Isotropic ? states::isotropic(2, p) : states::erased(p);
      SweepRow& row = rows[i];
      row.param = p;
      auto er = measures::e_rel_u(rho, mo);
      row.e_rel = er.value;
      row.converged = er.diagnostics.converged;
      if (opts.sdp_measures) {
        auto a = measures::e_max_u(rho, mo);
        auto b = measures::e_min_u(rho, mo);
        auto c = measures::unext_fidelity(rho, mo);
        row.e_max = a.value;
        row.e_min = b.value;
        row.f_u = c.value;
        row.converged = row.converged && a.diagnostics.converged && b.diagnostics.converged &&
                        c.diagnostics.converged;
      } else {
        row.e_max = row.e_min = row.f_u = std::numeric_limits<double>::quiet_NaN();
      }
      double ree = family == SweepFamily::Isotropic ? ree_isotropic_qubit(p) : ree_erased(p);
      row.overhead_rel = inverse_or_inf(row.e_rel);
      row.overhead_ree = inverse_or_inf(ree);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("sweep: " + e);
  return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepHeader << '\n';
  for (const auto& r : rows) {
    double v[] = {r.param, r.e_rel, r.e_max, r.e_min, r.f_u, r.overhead_rel, r.overhead_ree};
    for (size_t i = 0; i < std::size(v); ++i) {
      if (i) os << ',';
      write_number(os, v[i]);
    }
    os << '\n';
  }
}

MonteCarloResult erased_protocol_monte_carlo(double eps, std::int64_t trials, std::uint64_t seed) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("monte carlo: eps must lie in [0, 1]");
  if (trials < 1) throw std::invalid_argument("monte carlo: trials must be positive");
  MonteCarloResult res;
  res.trials = trials;
  if (eps >= 1.0) {
    res.infinite = true;
    res.mean = kInf;
    return res;
  }
  constexpr std::int64_t kBlock = 4096;
  const std::int64_t blocks = (trials + kBlock - 1) / kBlock;
  std::vector<double> block_sum(blocks, 0.0), block_sq(blocks, 0.0);
#if UEXT_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t b = 0; b < blocks; ++b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    // Failures before the first unerased copy.
    std::geometric_distribution<std::int64_t> failures(1.0 - eps);
    const std::int64_t end = std::min(trials, (b + 1) * kBlock);
    for (std::int64_t t = b * kBlock; t < end; ++t) {
      double copies = static_cast<double>(failures(rng) + 1);
      block_sum[b] += copies;
      block_sq[b] += copies * copies;
    }
  }
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t b = 0; b < blocks; ++b) {
    sum += block_sum[b];
    sum_sq += block_sq[b];
  }
  const double n = static_cast<double>(trials);
  res.mean = sum / n;
  double var = trials > 1 ? (sum_sq - n * res.mean * res.mean) / (n - 1.0) : 0.0;
  res.standard_error = std::sqrt(std::max(0.0, var) / n);
  return res;
}

}  // namespace uext::apps
