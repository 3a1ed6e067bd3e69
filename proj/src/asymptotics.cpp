#include "bose2d/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>

#include "bose2d/errors.hpp"

namespace bose2d {
namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

std::string num(const std::optional<double>& x) { return x ? num(*x) : "NA"; }

ExponentFit fit_rows(const SweepTable& t, const std::vector<double>& densities,
                     const std::function<std::optional<double>(const SweepRow&)>& defect) {
  std::vector<double> xs, ys;
  for (const SweepRow& r : t.rows) {
    if (!densities.empty() &&
        std::find(densities.begin(), densities.end(), r.rho_a2) == densities.end()) {
      continue;
    }
    const std::optional<double> d = defect(r);
    if (!d || !(*d > 0.0)) continue;
    xs.push_back(std::log(std::abs(r.log_rho_a2)));
    ys.push_back(std::log(*d));
  }
  return fit_line(xs, ys);
}

std::optional<double> upper_defect(const SweepRow& r) {
  if (!r.upper_ratio) return std::nullopt;
  return *r.upper_ratio - 1.0;
}

std::optional<double> lower_defect(const SweepRow& r) {
  if (!r.lower_ratio) return std::nullopt;
  return 1.0 - *r.lower_ratio;
}

std::vector<double> smallest(const SweepTable& t, int window) {
  std::vector<double> d;
  for (const SweepRow& r : t.rows) d.push_back(r.rho_a2);
  std::sort(d.begin(), d.end());
  if (window > 0 && static_cast<int>(d.size()) > window) d.resize(window);
  return d;
}

ScatteringSolution prepare(const SweepSpec& spec) {
  spec.validate();
  ScatteringSolution sol = solve_radial(spec.potential, spec.mu, 2, spec.solver);
  if (!std::isfinite(sol.log_range_over_a())) {
    throw DomainError("sweep needs a > 0; this potential has zero scattering length");
  }
  return sol;
}

std::vector<double> ordered(std::vector<double> d) {
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

SweepTable finish(const SweepSpec& spec, std::vector<SweepRow> rows) {
  SweepTable t;
  t.rows = std::move(rows);
  const std::vector<double> window = smallest(t, spec.fit_window);
  t.upper_fit = fit_upper_exponent(t, window);
  t.lower_fit = fit_lower_exponent(t, window);
  return t;
}

}  // namespace

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::upper: return "upper";
    case BoundKind::lower: return "lower";
    case BoundKind::scheduled_lower: return "scheduled_lower";
    case BoundKind::asymptote: return "asymptote";
  }
  return "unknown";
}

BoundKind bound_kind_from_string(const std::string& s) {
  for (BoundKind k : {BoundKind::upper, BoundKind::lower, BoundKind::scheduled_lower,
                      BoundKind::asymptote}) {
    if (to_string(k) == s) return k;
  }
  throw DomainError("unknown output kind '" + s + "'");
}

void SweepSpec::validate() const {
  if (densities.empty()) throw DomainError("sweep needs at least one density");
  for (double d : densities) {
    if (!(d > 0.0 && d < std::exp(-1.0))) {
      throw DomainError("sweep densities must lie in (0, e^-1), got " + num(d));
    }
  }
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
}

ExponentFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  ExponentFit f;
  f.points = static_cast<int>(std::min(x.size(), y.size()));
  if (f.points < 2) return f;
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < f.points; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= f.points;
  my /= f.points;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < f.points; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.valid = true;
  return f;
}

ExponentFit fit_upper_exponent(const SweepTable& t, const std::vector<double>& densities) {
  return fit_rows(t, densities, upper_defect);
}

ExponentFit fit_lower_exponent(const SweepTable& t, const std::vector<double>& densities) {
  return fit_rows(t, densities, lower_defect);
}

SweepRow evaluate_density(const SweepSpec& spec, const ScatteringSolution& sol, double rho_a2) {
  SweepRow row;
  row.rho_a2 = rho_a2;
  row.log_rho_a2 = std::log(rho_a2);
  const ScatteringScale scale{sol.range(), sol.log_range_over_a()};
  const double log_a = std::log(scale.R0) - scale.log_R0_over_a;
  row.a = std::exp(log_a);
  row.rho = std::exp(row.log_rho_a2 - 2.0 * log_a);
  const GasParameters gas(spec.mu, row.rho);
  row.asymptote = asymptotic_energy(spec.mu, row.rho, row.log_rho_a2);

  if (spec.wants(BoundKind::upper)) {
    try {
      row.upper = optimize_b(gas, spec.potential, sol, spec.upper);
      row.upper_ratio = row.upper->energy_per_particle / row.asymptote;
      if (row.upper->near_inadmissible) row.flags.push_back("upper_near_inadmissible");
    } catch (const std::exception&) {
      row.flags.push_back("upper_unavailable");
    }
  }
  if (spec.wants(BoundKind::lower)) {
    try {
      row.lower = optimize_lower_bound(gas, scale, spec.lower);
      row.lower_ratio = row.lower->energy_per_particle / row.asymptote;
    } catch (const std::exception&) {
      row.flags.push_back("lower_infeasible");
    }
  }
  if (spec.wants(BoundKind::scheduled_lower)) {
    try {
      row.scheduled = scheduled_lower_bound(gas, scale, spec.lower.schedule);
      if (!row.scheduled->valid) row.flags.push_back("scheduled_" + row.scheduled->failed);
    } catch (const std::exception&) {
      row.flags.push_back("scheduled_unavailable");
    }
  }
  if (row.upper && row.lower &&
      row.lower->energy_per_particle > row.upper->energy_per_particle) {
    row.flags.push_back("sandwich_violated");
  }
  return row;
}

SweepTable run_sweep_serial(const SweepSpec& spec) {
  const ScatteringSolution sol = prepare(spec);
  const std::vector<double> d = ordered(spec.densities);
  std::vector<SweepRow> rows;
  for (double x : d) rows.push_back(evaluate_density(spec, sol, x));
  return finish(spec, std::move(rows));
}

SweepTable run_sweep(const SweepSpec& spec) {
  const ScatteringSolution sol = prepare(spec);
  const std::vector<double> d = ordered(spec.densities);
  const int n = static_cast<int>(d.size());
  std::vector<SweepRow> rows(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      rows[i] = evaluate_density(spec, sol, d[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return finish(spec, std::move(rows));
}

std::string format_csv(const SweepTable& t) {
  std::string out = "rho_a2,a,b_opt,upper,eps,ell,R,lower,asymptote,upper_ratio,lower_ratio,flags\n";
  for (const SweepRow& r : t.rows) {
    std::string flags;
    for (const std::string& f : r.flags) flags += (flags.empty() ? "" : ";") + f;
    if (flags.empty()) flags = "ok";
    const bool up = r.upper.has_value();
    const bool lo = r.lower.has_value();
    out += num(r.rho_a2) + "," + num(r.a) + "," +
           (up ? num(r.upper->b) : "NA") + "," +
           (up ? num(r.upper->energy_per_particle) : "NA") + "," +
           (lo ? num(r.lower->params.epsilon) : "NA") + "," +
           (lo ? num(r.lower->params.ell) : "NA") + "," +
           (lo ? num(r.lower->params.R) : "NA") + "," +
           (lo ? num(r.lower->energy_per_particle) : "NA") + "," + num(r.asymptote) + "," +
           num(r.upper_ratio) + "," + num(r.lower_ratio) + "," + flags + "\n";
  }
  return out;
}

std::string format_plot_data(const SweepTable& t, const std::set<BoundKind>& outputs) {
  std::string out = "# abs_ln_rho_a2";
  const std::vector<BoundKind> order{BoundKind::upper, BoundKind::lower,
                                     BoundKind::scheduled_lower, BoundKind::asymptote};
  for (BoundKind k : order) {
    if (outputs.count(k)) out += " " + to_string(k) + "_ratio";
  }
  out += "\n";
  for (const SweepRow& r : t.rows) {
    out += num(std::abs(r.log_rho_a2));
    for (BoundKind k : order) {
      if (!outputs.count(k)) continue;
      std::optional<double> y;
      if (k == BoundKind::upper) y = r.upper_ratio;
      if (k == BoundKind::lower) y = r.lower_ratio;
      if (k == BoundKind::scheduled_lower && r.scheduled && r.scheduled->valid) {
        y = r.scheduled->energy_per_particle / r.asymptote;
      }
      if (k == BoundKind::asymptote) y = 1.0;
      out += " " + num(y);
    }
    out += "\n";
  }
  return out;
}

EmittedFiles emit_report(const SweepTable& t, const std::string& csv_path,
                         const std::set<BoundKind>& outputs) {
  if (t.rows.empty()) throw DomainError("empty sweep table");
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << text;
    os.flush();
    if (!os) throw IoError("failed writing '" + path + "'");
  };
  EmittedFiles files;
  files.csv = csv_path;
  write(csv_path, format_csv(t));
  if (!outputs.empty()) {
    const std::size_t dot = csv_path.find_last_of('.');
    const std::size_t slash = csv_path.find_last_of('/');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    files.plot = (has_ext ? csv_path.substr(0, dot) : csv_path) + ".plot.dat";
    write(files.plot, format_plot_data(t, outputs));
  }
  return files;
}

}  // namespace bose2d
