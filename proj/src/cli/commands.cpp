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

#include "uext/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "uext/applications.hpp"
#include "uext/cli/state_file.hpp"
#include "uext/version.hpp"

namespace uext::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StateArgs {
  std::string file;
  std::string family;
  int d = 2;
  double r = -1.0;
  double eps = -1.0;
  std::string schmidt;
  int key_dim = 2;
  std::optional<std::uint64_t> seed;
};

void add_state_options(CLI::App* app, StateArgs& a) {
  auto* file = app->add_option("--state", a.file, "State JSON file");
  auto* fam = app->add_option("--family", a.family, "maxent|isotropic|erased|pure-schmidt|private|product");
  file->excludes(fam);
  app->add_option("--d", a.d, "Local dimension (maxent, isotropic, product)");
  app->add_option("--r", a.r, "Isotropic fidelity parameter");
  app->add_option("--eps", a.eps, "Erasure probability");
  app->add_option("--schmidt", a.schmidt, "Comma-separated Schmidt coefficients");
  app->add_option("--key-dim", a.key_dim, "Key dimension of a private state");
  app->add_option("--seed", a.seed, "Seed for random local unitaries or twists");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (item.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("not a number: " + item);
    }
  }
  return out;
}

states::BipartiteState resolve_state(const StateArgs& a, std::string& label) {
  if (!a.file.empty()) {
    auto f = load_state_file(a.file);
    label = f.label;
    return to_state(f);
  }
  const std::string& fam = a.family;
  if (fam.empty()) throw InputError("one of --state or --family is required");
  auto need = [&](double v, const char* flag) {
    if (v < 0.0) throw InputError(fam + " requires " + flag);
  };
  std::ostringstream l;
  l << fam;
  if (fam == "maxent") {
    l << "(d=" << a.d << ")";
    label = l.str();
    return states::max_entangled(a.d);
  }
  if (fam == "isotropic") {
    need(a.r, "--r");
    l << "(d=" << a.d << ",r=" << a.r << ")";
    label = l.str();
    return states::isotropic(a.d, a.r);
  }
  if (fam == "erased") {
    need(a.eps, "--eps");
    l << "(eps=" << a.eps << ")";
    label = l.str();
    return states::erased(a.eps);
  }
  if (fam == "pure-schmidt") {
    auto c = parse_list(a.schmidt);
    if (c.empty()) throw InputError("pure-schmidt requires --schmidt");
    l << "(" << a.schmidt << ")";
    label = l.str();
    return states::pure_from_schmidt(c, a.seed);
  }
  if (fam == "private") {
    l << "(K=" << a.key_dim << ")";
    label = l.str();
    return states::private_state(a.key_dim, a.seed).state;
  }
  if (fam == "product") {
    l << "(d=" << a.d << ")";
    label = l.str();
    auto mixed = linalg::HermitianOperator(linalg::identity(a.d) / static_cast<double>(a.d));
    return states::product_state(mixed, mixed);
  }
  throw InputError("unknown family: " + fam);
}

void guard_size(const states::BipartiteState& rho) {
  long n = static_cast<long>(rho.d_a()) * rho.d_b() * rho.d_b();
  if (n > kMaxExtensionDim)
    throw InputError("state too large: d_A*d_B*d_B = " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxExtensionDim));
}

measures::Options options_from_env() {
  measures::Options o;
  if (const char* t = std::getenv("UEXT_SOLVER_TOL")) {
    char* end = nullptr;
    double v = std::strtod(t, &end);
    if (end == t || *end != '\0' || !(v > 0.0) || !(v < 1.0))
      throw InputError(std::string("UEXT_SOLVER_TOL must be a number in (0, 1): ") + t);
    o.solver.gap_tol = v;
  }
  return o;
}

ordered_json num(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

ordered_json diagnostics_json(const measures::Diagnostics& d) {
  ordered_json j;
  j["status"] = d.status;
  j["converged"] = d.converged;
  j["iterations"] = d.iterations;
  j["gap"] = num(d.gap);
  j["primal_residual"] = num(d.primal_residual);
  j["dual_residual"] = num(d.dual_residual);
  return j;
}

ordered_json header(const std::string& command, const std::string& label,
                    const states::BipartiteState& rho) {
  ordered_json j;
  j["schema"] = 1;
  j["version"] = kVersion;
  j["command"] = command;
  j["state"] = label;
  j["dims"] = {{"A", rho.d_a()}, {"B", rho.d_b()}};
  return j;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void emit(std::ostream& out, ordered_json j, Clock::time_point t0) {
  j["runtime_ms"] = num(elapsed_ms(t0));
  out << j.dump() << '\n';
}

bool valid_petz_alpha(double a) { return a > 0.0 && a <= 2.0; }

int cmd_measure(const StateArgs& sa, const std::string& kind, std::optional<double> alpha,
                bool dual, const std::string& dump, std::ostream& out) {
  auto t0 = Clock::now();
  std::string label;
  auto rho = resolve_state(sa, label);
  guard_size(rho);
  auto opts = options_from_env();
  opts.solve_dual = dual;
  measures::MeasureResult r;
  ordered_json j = header("measure", label, rho);
  j["kind"] = kind;
  if (kind == "emax") {
    r = measures::e_max_u(rho, opts);
  } else if (kind == "emin") {
    r = measures::e_min_u(rho, opts);
  } else if (kind == "fidelity") {
    r = measures::unext_fidelity(rho, opts);
  } else if (kind == "rel") {
    r = measures::e_rel_u(rho, opts);
  } else if (kind == "petz") {
    if (!alpha) throw InputError("--kind petz requires --alpha");
    if (!valid_petz_alpha(*alpha)) throw InputError("--alpha must lie in (0, 1) or (1, 2] for petz");
    j["alpha"] = num(*alpha);
    r = measures::petz_alpha_u(rho, *alpha, opts);
  } else {
    throw InputError("unknown --kind: " + kind);
  }
  if (!dump.empty()) {
    auto ext = std::make_shared<const conic::ExtensionProgram>(rho);
    conic::BuiltProgram bp;
    if (kind == "emax") bp = conic::build_emax(ext);
    else if (kind == "emin") bp = conic::build_emin(ext);
    else if (kind == "fidelity") bp = conic::build_fidelity(ext);
    else throw InputError("--dump-problem is available for emax, emin and fidelity");
    std::ofstream f(dump);
    if (!f) throw InputError("cannot write " + dump);
    conic::write_problem(f, bp.problem);
  }
  j["value"] = r.infinite ? ordered_json("inf") : num(r.value);
  if (kind == "fidelity") j["e_half"] = num(measures::sandwiched_half_u(r));
  if (dual) j["dual_value"] = num(r.diagnostics.dual_value);
  j["diagnostics"] = diagnostics_json(r.diagnostics);
  emit(out, std::move(j), t0);
  return r.diagnostics.converged ? kExitOk : kExitNotConverged;
}

std::vector<double> make_grid(const std::string& spec) {
  auto parts = std::vector<std::string>{};
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw InputError("--grid expects start:stop:step");
  auto v = parse_list(parts[0] + "," + parts[1] + "," + parts[2]);
  if (v.size() != 3 || !(v[2] > 0.0)) throw InputError("--grid expects start:stop:step with step > 0");
  std::vector<double> g;
  const long n = std::lround(std::floor((v[1] - v[0]) / v[2] + 1e-9));
  for (long i = 0; i <= n; ++i) {
    double x = v[0] + static_cast<double>(i) * v[2];
    g.push_back(std::round(x * 1e12) / 1e12);
  }
  return g;
}

int cmd_sweep(const std::string& family, const std::string& grid, const std::optional<std::string>& values,
              const std::string& out_path, int jobs, bool sdp, std::ostream& out) {
  auto fam = apps::parse_family(family);
  std::vector<double> g;
  if (values) g = parse_list(*values);
  else if (!grid.empty()) g = make_grid(grid);
  else g = make_grid(fam == apps::SweepFamily::Erased ? "0:1:0.1" : "0.55:1:0.05");
  for (double p : g)
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("grid values must lie in [0, 1]");
  if (jobs < 1) throw InputError("--jobs must be positive");
  apps::SweepOptions so;
  so.measure = options_from_env();
  so.jobs = jobs;
  so.sdp_measures = sdp;
  auto rows = apps::sweep(fam, g, so);
  if (out_path.empty() || out_path == "-") {
    apps::write_csv(out, rows);
  } else {
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot write " + out_path);
    apps::write_csv(f, rows);
  }
  for (const auto& r : rows)
    if (!r.converged) return kExitNotConverged;
  return kExitOk;
}

int cmd_check(const StateArgs& sa, const std::string& cert, std::ostream& out) {
  auto t0 = Clock::now();
  std::string label;
  auto rho = resolve_state(sa, label);
  guard_size(rho);
  auto opts = options_from_env();
  auto r = measures::is_two_extendible(rho, opts);
  ordered_json j = header("check-extendible", label, rho);
  const char* verdict = r.verdict == conic::Verdict::Feasible     ? "feasible"
                        : r.verdict == conic::Verdict::Infeasible ? "infeasible"
                                                                  : "indeterminate";
  j["feasible"] = r.extendible;
  j["verdict"] = verdict;
  j["residual"] = num(r.residual);
  if (r.certificate && !cert.empty()) {
    StateFile f{rho.d_a(), rho.d_b() * rho.d_b(), *r.certificate, "extension ABB' of " + label};
    save_state_file(cert, f);
    j["certificate_file"] = cert;
  }
  emit(out, std::move(j), t0);
  return r.verdict == conic::Verdict::Indeterminate ? kExitNotConverged : kExitOk;
}

int cmd_bounds(const StateArgs& sa, const std::string& task_name, int k, int m, std::ostream& out) {
  auto t0 = Clock::now();
  auto task = apps::parse_task(task_name);
  std::string label;
  auto rho = resolve_state(sa, label);
  guard_size(rho);
  auto opts = options_from_env();
  ordered_json j = header("bounds", label, rho);
  j["task"] = task_name;
  if (task == apps::Task::DetRate) {
    double v = apps::det_rate_to_ebit(rho);
    j["value"] = num(v);
    j["measure"] = "E_min^u";
    j["measure_value"] = num(v);
    emit(out, std::move(j), t0);
    return kExitOk;
  }
  apps::BoundReport b;
  switch (task) {
    case apps::Task::KeyOverhead:
      j["k"] = k;
      b = apps::key_overhead_lower_bound(rho, k, opts, label);
      break;
    case apps::Task::EntOverhead:
      j["m"] = m;
      b = apps::ent_overhead_lower_bound(rho, m, opts, label);
      break;
    case apps::Task::ExactKey: b = apps::exact_key_upper_bound(rho, opts, label); break;
    default: b = apps::exact_ent_upper_bound(rho, opts, label); break;
  }
  j["value"] = b.infinite ? ordered_json("inf") : num(b.value);
  j["measure"] = b.measure;
  j["measure_value"] = num(b.measure_value);
  j["diagnostics"] = diagnostics_json(b.diagnostics);
  emit(out, std::move(j), t0);
  return b.diagnostics.converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unextendible entanglement measures"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  StateArgs ms, cs, bs;
  std::string kind, dump;
  std::optional<double> alpha;
  bool dual = false;
  auto* measure = app.add_subcommand("measure", "Evaluate one measure");
  measure->add_option("--kind", kind, "emax|emin|fidelity|rel|petz")->required();
  measure->add_option("--alpha", alpha, "Renyi parameter for petz");
  measure->add_flag("--dual", dual, "Also solve the dual program");
  measure->add_option("--dump-problem", dump, "Write the conic problem to a file");
  add_state_options(measure, ms);

  std::string family, grid, out_path;
  std::optional<std::string> values;
  int jobs = 1;
  bool no_sdp = false;
  auto* sweep = app.add_subcommand("sweep", "Tabulate measures and overhead bounds as CSV");
  sweep->add_option("--family", family, "isotropic|erased")->required();
  sweep->add_option("--grid", grid, "start:stop:step");
  sweep->add_option("--values", values, "Comma-separated parameter values");
  sweep->add_option("--out", out_path, "CSV output file (default stdout)");
  sweep->add_option("--jobs", jobs, "Grid points evaluated in parallel");
  sweep->add_flag("--no-sdp", no_sdp, "Skip e_max, e_min and f_u");

  std::string cert;
  auto* check = app.add_subcommand("check-extendible", "Two-extendibility feasibility");
  add_state_options(check, cs);
  check->add_option("--certificate", cert, "Write the extension as a state file");

  std::string task;
  int k = 1, m = 1;
  auto* bounds = app.add_subcommand("bounds", "Distillation bounds");
  bounds->add_option("--task", task, "key-overhead|ent-overhead|exact-key|exact-ent|det-rate")->required();
  bounds->add_option("--k", k, "Private bits");
  bounds->add_option("--m", m, "Ebits");
  add_state_options(bounds, bs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  try {
    if (*measure) return cmd_measure(ms, kind, alpha, dual, dump, out);
    if (*sweep) return cmd_sweep(family, grid, values, out_path, jobs, !no_sdp, out);
    if (*check) return cmd_check(cs, cert, out);
    if (*bounds) return cmd_bounds(bs, task, k, m, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  }
  return kExitInput;
}

}  // namespace uext::cli
