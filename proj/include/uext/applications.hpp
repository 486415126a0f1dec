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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uext/measures.hpp"

namespace uext::apps {

enum class Task { KeyOverhead, EntOverhead, ExactKey, ExactEnt, DetRate };

std::string to_string(Task t);
Task parse_task(const std::string& s);  // throws std::invalid_argument

struct BoundReport {
  Task task = Task::KeyOverhead;
  double value = 0.0;  // copies per success, or bits per copy
  bool infinite = false;
  std::string measure;  // "E^u" or "E_min^u"
  double measure_value = 0.0;
  std::string state;
  measures::Diagnostics diagnostics;
};

/// Measures below this many bits count as zero for overhead bounds.
inline constexpr double kZeroMeasure = 1e-9;

/// k / E^u(rho) copies per k private bits.
BoundReport key_overhead_lower_bound(const states::BipartiteState& rho, int k,
                                     const measures::Options& opts = {},
                                     const std::string& label = "");
/// m / E^u(rho) copies per m ebits.
BoundReport ent_overhead_lower_bound(const states::BipartiteState& rho, int m,
                                     const measures::Options& opts = {},
                                     const std::string& label = "");
/// E_min^u(rho) bits per copy.
BoundReport exact_key_upper_bound(const states::BipartiteState& rho,
                                  const measures::Options& opts = {},
                                  const std::string& label = "");
BoundReport exact_ent_upper_bound(const states::BipartiteState& rho,
                                  const measures::Options& opts = {},
                                  const std::string& label = "");

/// Deterministic rate of psi -> ebit: -log2 of the largest Schmidt coefficient.
double det_rate_to_ebit(const states::BipartiteState& psi);

struct PrivateStateCheck {
  double log_k = 0.0;
  double e_min = 0.0;
  double e_max = 0.0;
  double e_half = 0.0;  // -log2 F^u
  bool converged = false;
  bool holds(double tol = 1e-6) const {
    return e_min >= log_k - tol && e_max >= log_k - tol && e_half >= log_k - tol;
  }
};

PrivateStateCheck private_state_bound_check(const states::PrivateState& gamma,
                                            const measures::Options& opts = {});

/// 1 - eps.
double ree_erased(double eps);

struct ReeWitness {
  double closed_form = 0.0;
  double divergence = 0.0;  // D(rho^eps || witness)
  Matrix witness;           // separable state on A B
};

/// The separable state (1-eps)/2 (|00><00| + |11><11|) + eps |e><e| (x) 1/2 and
/// its divergence from the erased state.
ReeWitness ree_erased_witness(double eps);

/// Relative entropy of entanglement of the two-qubit isotropic state with
/// fidelity r, by golden-section search over separable isotropic states.
double ree_isotropic_qubit(double r);

/// Positivity of the partial transpose (separability for two qubits).
bool is_ppt(const states::BipartiteState& rho, double tol = 1e-12);

enum class SweepFamily { Isotropic, Erased };

SweepFamily parse_family(const std::string& s);

struct SweepRow {
  double param = 0.0;
  double e_rel = 0.0;
  double e_max = 0.0;
  double e_min = 0.0;
  double f_u = 0.0;
  double overhead_rel = 0.0;
  double overhead_ree = 0.0;
  bool converged = true;
};

struct SweepOptions {
  measures::Options measure;
  int jobs = 1;
  bool sdp_measures = true;  // fill e_max, e_min, f_u
};

/// One row per grid point: measures, then the overhead bounds 1/E^u and 1/E_R.
std::vector<SweepRow> sweep(SweepFamily family, const std::vector<double>& grid,
                            const SweepOptions& opts = {});

inline constexpr const char* kSweepHeader = "param,e_rel,e_max,e_min,f_u,overhead_rel,overhead_ree";

/// Writes header and rows; infinities as "inf", 9 significant digits.
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct MonteCarloResult {
  double mean = 0.0;  // copies consumed per ebit
  double standard_error = 0.0;
  std::int64_t trials = 0;
  bool infinite = false;
};

/// Alice measures the flag of each erased copy and announces it; the pair is
/// kept on "not erased". Each trial counts the copies spent until one ebit.
MonteCarloResult erased_protocol_monte_carlo(double eps, std::int64_t trials, std::uint64_t seed);

}  // namespace uext::apps
