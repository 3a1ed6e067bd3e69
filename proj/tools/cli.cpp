#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bose2d/asymptotics.hpp"
#include "bose2d/dyson.hpp"
#include "bose2d/errors.hpp"
#include "bose2d/lower_bound.hpp"
#include "bose2d/parallel.hpp"
#include "bose2d/scattering.hpp"
#include "bose2d/suites.hpp"
#include "bose2d/upper_bound.hpp"
#include "config.hpp"

namespace bose2d::cli {
namespace {

using Json = nlohmann::ordered_json;

// Non-finite numbers become null plus a "<key>_nonfinite" flag.
void put(Json& j, const std::string& key, double x) {
  if (std::isfinite(x)) {
    j[key] = x;
  } else {
    j[key] = nullptr;
    j["flags"].push_back(key + "_nonfinite");
  }
}

struct Flags {
  std::string potential, config, out, format;
  double mu = 0.0, rho = 0.0, rho_a2 = 0.0;
  std::uint64_t seed = 0;
  int trials = 0;
  bool assert_mode = false;
  CLI::Option* o_potential = nullptr;
  CLI::Option* o_mu = nullptr;
  CLI::Option* o_rho = nullptr;
  CLI::Option* o_rho_a2 = nullptr;
  CLI::Option* o_config = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_format = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_trials = nullptr;
};

void add_flags(CLI::App* app, Flags& f) {
  f.o_potential = app->add_option("--potential", f.potential,
                                  "hard_disc:R | square_well:v0,R0[,core] | "
                                  "piecewise:[core=rc,]v@r,... | power_tail:v0,R0,c,p | zero:R");
  f.o_mu = app->add_option("--mu", f.mu, "hbar^2/2m");
  f.o_rho = app->add_option("--rho", f.rho, "density (particles per unit area)");
  f.o_rho_a2 = app->add_option("--rho-a2", f.rho_a2, "dimensionless density rho a^2");
  f.o_config = app->add_option("--config", f.config, "JSON config; flags override it");
  f.o_out = app->add_option("--out", f.out, "output path (stdout when absent)");
  f.o_format = app->add_option("--format", f.format, "json or csv")
                   ->check(CLI::IsMember({"json", "csv"}));
  f.o_seed = app->add_option("--seed", f.seed, "seed for randomized suites");
  f.o_trials = app->add_option("--trials", f.trials, "randomized trials");
  app->add_flag("--assert", f.assert_mode, "exit 1 unless every check passes");
}

RunConfig resolve(const Flags& f) {
  RunConfig c = f.o_config->count() ? load_config(f.config) : RunConfig{};
  if (f.o_potential->count()) c.potential = f.potential;
  if (f.o_mu->count()) c.mu = f.mu;
  if (f.o_rho->count()) c.rho = f.rho;
  if (f.o_rho_a2->count()) c.rho_a2 = f.rho_a2;
  if (f.o_out->count()) c.out = f.out;
  if (f.o_format->count()) c.format = f.format;
  if (f.o_seed->count()) c.seed = f.seed;
  if (f.o_trials->count()) c.trials = f.trials;
  c.assert_mode = f.assert_mode;
  if (f.o_rho->count() && !f.o_rho_a2->count()) c.rho_a2.reset();
  if (f.o_rho_a2->count() && !f.o_rho->count()) c.rho.reset();
  c.validate();
  return c;
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.rtol = c.tolerances.ode_rtol;
  return o;
}

LowerOptions lower_options(const RunConfig& c) {
  LowerOptions o;
  o.schedule = c.schedule;
  o.max_iterations = c.tolerances.simplex_iterations;
  return o;
}

UpperOptions upper_options(const RunConfig& c) {
  UpperOptions o;
  o.log_b_tolerance = c.tolerances.log_b;
  o.quadrature_rtol = c.tolerances.quadrature_rtol;
  return o;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

// Flattens nested objects to dotted keys; arrays are joined with ';'.
void flatten(const Json& j, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  for (const auto& [k, v] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      flatten(v, key, keys, values);
      continue;
    }
    std::string text;
    if (v.is_array()) {
      for (const auto& e : v) text += (text.empty() ? "" : ";") + (e.is_string() ? e.get<std::string>() : e.dump());
    } else if (v.is_string()) {
      text = v.get<std::string>();
    } else if (v.is_null()) {
      text = "NA";
    } else {
      text = v.dump();
    }
    keys.push_back(key);
    values.push_back(csv_escape(text));
  }
}

void write_text(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream os(c.out, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + c.out + "' for writing");
  os << text;
  if (!os) throw IoError("failed writing '" + c.out + "'");
}

void emit(const RunConfig& c, std::ostream& out, const Json& j) {
  if (c.format == "csv") {
    std::vector<std::string> keys, values;
    flatten(j, "", keys, values);
    std::string text;
    for (std::size_t i = 0; i < keys.size(); ++i) text += (i ? "," : "") + keys[i];
    text += "\n";
    for (std::size_t i = 0; i < values.size(); ++i) text += (i ? "," : "") + values[i];
    write_text(c, out, text + "\n");
  } else {
    write_text(c, out, j.dump(2) + "\n");
  }
}

Json solution_json(const RunConfig& c, const ScatteringSolution& sol) {
  Json j;
  j["potential"] = c.potential;
  j["mu"] = c.mu;
  j["dimension"] = sol.dimension();
  j["flags"] = Json::array();
  put(j, "a", sol.a());
  put(j, "log_R0_over_a", sol.log_range_over_a());
  j["R0"] = sol.range();
  j["core_radius"] = sol.core_radius();
  j["reference_R"] = sol.reference_radius();
  put(j, "f0_at_R0", sol.boundary_value());
  put(j, "df0_at_R0", sol.boundary_slope());
  j["method"] = sol.method();
  j["tolerances"] = {{"ode_rtol", c.tolerances.ode_rtol}};
  if (sol.a() == 0.0) j["flags"].push_back("a_underflow");
  return j;
}

// rho from --rho or --rho-a2 (through ln a so tiny a is fine).
double resolve_rho(const RunConfig& c, const ScatteringSolution& sol) {
  if (c.rho && c.rho_a2) throw UsageError("give either --rho or --rho-a2, not both");
  if (c.rho) {
    if (!(*c.rho > 0.0)) throw DomainError("rho must be positive");
    return *c.rho;
  }
  if (c.rho_a2) {
    if (!(*c.rho_a2 > 0.0)) throw DomainError("rho a^2 must be positive");
    if (!std::isfinite(sol.log_range_over_a())) throw DomainError("a = 0: rho a^2 does not fix rho");
    const double log_a = std::log(sol.range()) - sol.log_range_over_a();
    return std::exp(std::log(*c.rho_a2) - 2.0 * log_a);
  }
  throw UsageError("this subcommand needs --rho or --rho-a2");
}

Json upper_json(const UpperBoundReport& r, double asymptote) {
  Json j;
  j["flags"] = Json::array();
  put(j, "energy_per_particle", r.energy_per_particle);
  put(j, "b_opt", r.b);
  put(j, "I", r.I);
  put(j, "J", r.J);
  put(j, "K", r.K);
  put(j, "rho_I", r.rho_I);
  put(j, "leading_term", r.leading_term);
  put(j, "asymptote", asymptote);
  put(j, "ratio", r.energy_per_particle / asymptote);
  j["near_inadmissible"] = r.near_inadmissible;
  if (r.near_inadmissible) j["flags"].push_back("near_inadmissible");
  j["note"] = r.note;
  return j;
}

Json lower_json(const LowerBoundReport& r) {
  Json j;
  j["valid"] = r.valid;
  j["failed"] = r.failed;
  j["flags"] = Json::array();
  if (!r.valid) j["flags"].push_back(r.failed);
  put(j, "energy_per_particle", r.energy_per_particle);
  put(j, "leading_ratio", r.leading_ratio);
  put(j, "K", r.K_value);
  Json p;
  put(p, "epsilon", r.params.epsilon);
  put(p, "ell", r.params.ell);
  put(p, "R", r.params.R);
  p["n_cell"] = r.params.n_cell;
  put(p, "Q", r.params.Q);
  j["params"] = p;
  Json c;
  for (const auto& [name, ok] : r.flags.named()) c[name] = ok;
  j["constraints"] = c;
  Json e;
  put(e, "epsilon", r.errors.epsilon);
  put(e, "inv_rho_ell2", r.errors.inv_rho_ell2);
  put(e, "R_over_ell", r.errors.R_over_ell);
  put(e, "rho_R2", r.errors.rho_R2);
  put(e, "temple_ratio", r.errors.temple_ratio);
  j["error_terms"] = e;
  return j;
}

int cmd_scattering(const RunConfig& c, std::ostream& out) {
  const RadialPotential v = parse_potential(c.potential);
  const ScatteringSolution sol = solve_radial(v, c.mu, 2, solver_options(c));
  Json j = solution_json(c, sol);
  const InequalityReport ineq = integral_inequalities(v, sol, c.mu);
  Json q;
  q["status"] = ineq.status == InequalityReport::Status::evaluated       ? "evaluated"
                : ineq.status == InequalityReport::Status::trivial_hard_core ? "trivial_hard_core"
                                                                          : "degenerate_zero_a";
  if (ineq.status == InequalityReport::Status::evaluated) {
    put(q, "lhs", ineq.lhs);
    put(q, "rhs", ineq.rhs);
    put(q, "slack", ineq.slack);
  }
  j["integral_inequality"] = q;
  emit(c, out, j);
  return 0;
}

int cmd_upper(const RunConfig& c, std::ostream& out) {
  const RadialPotential v = parse_potential(c.potential);
  const ScatteringSolution sol = solve_radial(v, c.mu, 2, solver_options(c));
  const double rho = resolve_rho(c, sol);
  const GasParameters gas(c.mu, rho);
  const UpperBoundReport r = optimize_b(gas, v, sol, upper_options(c));
  const double log_rho_a2 = std::log(rho) + 2.0 * (std::log(sol.range()) - sol.log_range_over_a());
  Json j;
  j["potential"] = c.potential;
  j["mu"] = c.mu;
  put(j, "rho", rho);
  put(j, "log_rho_a2", log_rho_a2);
  j["upper"] = upper_json(r, asymptotic_energy(c.mu, rho, log_rho_a2));
  emit(c, out, j);
  return 0;
}

int cmd_lower(const RunConfig& c, std::ostream& out) {
  const RadialPotential v = parse_potential(c.potential);
  const ScatteringSolution sol = solve_radial(v, c.mu, 2, solver_options(c));
  const double rho = resolve_rho(c, sol);
  const GasParameters gas(c.mu, rho);
  const ScatteringScale scale{sol.range(), sol.log_range_over_a()};
  if (!std::isfinite(scale.log_R0_over_a)) throw DomainError("lower bound needs a > 0");
  Json j;
  j["potential"] = c.potential;
  j["mu"] = c.mu;
  put(j, "rho", rho);
  put(j, "log_rho_a2", scale.log_rho_a2(rho));
  const LowerBoundReport sched = scheduled_lower_bound(gas, scale, c.schedule);
  j["scheduled"] = lower_json(sched);
  int code = 0;
  try {
    j["optimized"] = lower_json(optimize_lower_bound(gas, scale, lower_options(c)));
  } catch (const ValidityError& e) {
    j["optimized"] = nullptr;
    j["error"] = e.what();
    code = 1;
  }
  emit(c, out, j);
  return code;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  SweepSpec spec;
  spec.densities = c.densities;
  spec.potential = parse_potential(c.potential);
  spec.mu = c.mu;
  spec.outputs = c.outputs;
  spec.fit_window = c.fit_window;
  spec.upper = upper_options(c);
  spec.lower = lower_options(c);
  spec.solver = solver_options(c);
  const SweepTable t = run_sweep(spec);

  bool ok = true;
  for (const SweepRow& r : t.rows) ok = ok && r.valid();
  ok = ok && t.upper_fit.valid && c.upper_slope.contains(t.upper_fit.slope);
  ok = ok && t.lower_fit.valid && c.lower_slope.contains(t.lower_fit.slope);

  // --out always gets the CSV (and plot data); JSON then goes to stdout.
  if (!c.out.empty()) emit_report(t, c.out, c.outputs);
  if (c.format == "csv") {
    if (c.out.empty()) out << format_csv(t);
  } else {
    Json j;
    j["potential"] = c.potential;
    j["mu"] = c.mu;
    Json rows = Json::array();
    for (const SweepRow& r : t.rows) {
      Json row;
      row["rho_a2"] = r.rho_a2;
      put(row, "a", r.a);
      put(row, "asymptote", r.asymptote);
      row["upper"] = r.upper ? upper_json(*r.upper, r.asymptote) : Json(nullptr);
      row["lower"] = r.lower ? lower_json(*r.lower) : Json(nullptr);
      row["scheduled"] = r.scheduled ? lower_json(*r.scheduled) : Json(nullptr);
      row["flags"] = r.flags;
      rows.push_back(row);
    }
    j["rows"] = rows;
    auto fit = [](const ExponentFit& f) {
      Json x;
      x["valid"] = f.valid;
      x["points"] = f.points;
      if (f.valid) {
        x["slope"] = f.slope;
        x["intercept"] = f.intercept;
      } else {
        x["slope"] = nullptr;
        x["intercept"] = nullptr;
      }
      return x;
    };
    j["upper_fit"] = fit(t.upper_fit);
    j["lower_fit"] = fit(t.lower_fit);
    j["all_checks_pass"] = ok;
    out << j.dump(2) << "\n";
  }
  return c.assert_mode && !ok ? 1 : 0;
}

int cmd_verify_dyson(const RunConfig& c, std::ostream& out) {
  const DysonSuiteReport r = run_dyson_suite(c.trials, c.seed, c.n_angles);
  Json j;
  put(j, "min_slack", r.min_slack);
  put(j, "total_slack", r.min_total_slack);
  j["n_angles"] = r.n_angles;
  j["n_trials"] = r.n_trials;
  j["seed"] = r.seed;
  j["worst_trial"] = r.worst_trial;
  j["tolerance"] = r.tolerance;
  j["all_pass"] = r.all_pass;
  emit(c, out, j);
  return r.all_pass ? 0 : 1;
}

int cmd_verify_lemmas(const RunConfig& c, std::ostream& out) {
  const LemmaSuiteReport r = run_lemma_suite(c.trials, c.seed);
  const InequalitySuiteReport q = run_inequality_suite(c.trials, c.seed);
  Json j;
  j["n_trials"] = r.n_trials;
  j["seed"] = r.seed;
  j["failures"] = r.failures;
  put(j, "min_bound_margin", r.min_bound_margin);
  put(j, "min_monotone_margin", r.min_monotone_margin);
  put(j, "min_comparison_margin", r.min_comparison_margin);
  put(j, "max_variational_error", r.max_variational_error);
  j["worst_trial"] = r.worst_trial;
  put(j, "inequality_min_slack", q.min_slack);
  j["all_pass"] = r.all_pass && q.all_pass;
  emit(c, out, j);
  return r.all_pass && q.all_pass ? 0 : 1;
}

int cmd_verify_inequalities(const RunConfig& c, std::ostream& out) {
  const InequalitySuiteReport q = run_inequality_suite(c.trials, c.seed);
  Json j;
  j["n_trials"] = q.n_trials;
  j["seed"] = q.seed;
  j["evaluated"] = q.evaluated;
  put(j, "min_slack", q.min_slack);
  put(j, "min_relative_slack", q.min_relative_slack);
  j["worst_trial"] = q.worst_trial;
  j["weak_lambda"] = q.weak_lambda;
  j["weak_samples"] = q.weak_samples;
  put(j, "max_weak_deviation", q.max_weak_deviation);
  j["all_pass"] = q.all_pass;
  emit(c, out, j);
  return q.all_pass ? 0 : 1;
}

void print_error(std::ostream& err, const char* kind, const std::string& what) {
  err << "error (" << kind << "): " << what << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  apply_thread_cap();
  CLI::App app{"Bounds on the ground-state energy of the dilute two-dimensional Bose gas", "bose2d"};
  app.require_subcommand(1);
  std::map<CLI::App*, Flags> flags;
  CLI::App* scat = app.add_subcommand("scattering-length", "scattering length of a potential");
  CLI::App* up = app.add_subcommand("upper-bound", "optimized variational upper bound");
  CLI::App* low = app.add_subcommand("lower-bound", "scheduled and optimized lower bound");
  CLI::App* sweep = app.add_subcommand("sweep", "density sweep with exponent fits");
  CLI::App* verify = app.add_subcommand("verify", "randomized checks");
  verify->require_subcommand(1);
  CLI::App* v_dyson = verify->add_subcommand("dyson", "Dyson lemma on random star domains");
  CLI::App* v_lemmas = verify->add_subcommand("lemmas", "minimizer properties and variational check");
  CLI::App* v_ineq = verify->add_subcommand("inequalities", "integral inequality suite");
  const std::vector<CLI::App*> leaves{scat, up, low, sweep, v_dyson, v_lemmas, v_ineq};
  for (CLI::App* a : leaves) add_flags(a, flags[a]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    CLI::App* leaf = nullptr;
    for (CLI::App* a : leaves) {
      if (*a) leaf = a;
    }
    const RunConfig c = resolve(flags.at(leaf));
    int code = 0;
    if (*scat) code = cmd_scattering(c, out);
    if (*up) code = cmd_upper(c, out);
    if (*low) code = cmd_lower(c, out);
    if (*sweep) code = cmd_sweep(c, out);
    if (*v_dyson) code = cmd_verify_dyson(c, out);
    if (*v_lemmas) code = cmd_verify_lemmas(c, out);
    if (*v_ineq) code = cmd_verify_inequalities(c, out);
    return code;
  } catch (const UsageError& e) {
    print_error(err, "usage", e.what());
    return 2;
  } catch (const DomainError& e) {
    print_error(err, "domain", e.what());
    return 1;
  } catch (const ValidityError& e) {
    print_error(err, "validity", e.what());
    return 1;
  } catch (const SolverError& e) {
    print_error(err, "solver", e.what());
    return 1;
  } catch (const IoError& e) {
    print_error(err, "io", e.what());
    return 1;
  }
}

}  // namespace bose2d::cli
