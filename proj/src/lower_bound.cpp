#include "bose2d/lower_bound.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "bose2d/errors.hpp"
#include "bose2d/optimize.hpp"

namespace bose2d {
namespace {

constexpr double kPi = std::numbers::pi;

// nu in lengths of the caller's choice; log_R2_over_a2 = ln(R^2/a^2) etc.
double nu_from_logs(double R0, double R, double log_R02_over_a2, double log_R2_over_a2) {
  return 0.25 * (R * R * (log_R2_over_a2 - 1.0) - R0 * R0 * (log_R02_over_a2 - 1.0));
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Everything below works with lengths multiplied by rho^{1/2}.
LowerBoundReport assemble_reduced(const GasParameters& gas, const ScatteringScale& scale,
                                  double eps, double ell_h, double R_h) {
  LowerBoundReport rep;
  const double sr = std::sqrt(gas.rho);
  const double R0_h = scale.R0 * sr;
  rep.log_rho_a2 = scale.log_rho_a2(gas.rho);
  const double L = std::abs(rep.log_rho_a2);

  rep.params.epsilon = eps;
  rep.params.ell = ell_h / sr;
  rep.params.R = R_h / sr;
  const double ell2 = ell_h * ell_h;
  rep.params.n_cell = std::max(2, static_cast<int>(std::ceil(4.0 * ell2)));
  const double area = kPi * (R_h * R_h - R0_h * R0_h);
  rep.params.Q = area / ell2;
  const int n = rep.params.n_cell;

  const double log_R2_a2 = 2.0 * (std::log(R_h / R0_h) + scale.log_R0_over_a);
  rep.errors.epsilon = eps;
  rep.errors.inv_rho_ell2 = 1.0 / ell2;
  rep.errors.R_over_ell = R_h / ell_h;
  rep.errors.rho_R2 = R_h * R_h;
  rep.errors.temple_ratio = ell2 * ell2 / (eps * R_h * R_h * log_R2_a2);

  ConstraintFlags& f = rep.flags;
  f.epsilon_in_unit_interval = eps > 0.0 && eps < 1.0;
  f.R_above_R0 = R_h > R0_h;
  f.two_R_below_ell = 2.0 * R_h < ell_h;
  f.rho_ell2_above_one = ell2 > 1.0;
  f.covered_fraction_below_one = rep.params.Q < 1.0;

  const double nu_h = nu_from_logs(R0_h, R_h, 2.0 * scale.log_R0_over_a, log_R2_a2);
  const double denom = eps * nu_h / ell2 - n * (n - 1.0) * rep.params.Q;
  f.temple_condition = f.R_above_R0 && nu_h > 0.0 && denom > 0.0;

  if (f.epsilon_in_unit_interval && f.R_above_R0 && f.two_R_below_ell &&
      f.rho_ell2_above_one && f.covered_fraction_below_one && f.temple_condition) {
    const double s = 1.0 - 2.0 * R_h / ell_h;
    rep.K_value = (1.0 - eps) * s * s / (1.0 + (n - 1.0) * rep.params.Q) * (1.0 - n / denom);
    const double shape = (area / nu_h) * (1.0 - 1.0 / ell2) * rep.K_value;
    rep.energy_per_particle = gas.mu * gas.rho * shape;
    rep.leading_ratio = shape * L / (4.0 * kPi);
    f.ratio_within_budget = rep.leading_ratio <= 1.05;
  }
  for (const auto& [name, ok] : f.named()) {
    if (!ok) {
      rep.failed = name;
      break;
    }
  }
  rep.valid = rep.failed.empty();
  if (!rep.valid) {
    rep.energy_per_particle = 0.0;
    rep.leading_ratio = 0.0;
    rep.K_value = f.temple_condition ? rep.K_value : 0.0;
  }
  return rep;
}

}  // namespace

SoftPotentialUR SoftPotentialUR::make(double R0, double R, double a) {
  SoftPotentialUR s;
  s.R0 = R0;
  s.R = R;
  s.a = a;
  s.nu = nu_of_R(R0, R, a);
  s.area = kPi * (R * R - R0 * R0);
  return s;
}

RadialPotential SoftPotentialUR::potential() const {
  if (!(R > R0)) throw DomainError("U_R needs R > R0");
  return RadialPotential::piecewise_constant(0.0, {{R0, 0.0}, {R, 1.0 / nu}});
}

double nu_of_R(double R0, double R, double a) {
  if (!(a > 0.0 && R0 > 0.0)) throw DomainError("nu(R) needs a > 0 and R0 > 0");
  if (a > R0) throw DomainError("nu(R) needs a <= R0: ln(r/a) changes sign inside the annulus");
  if (R < R0) throw DomainError("nu(R) needs R >= R0");
  if (R == R0) return 0.0;
  return nu_from_logs(R0, R, 2.0 * std::log(R0 / a), 2.0 * std::log(R / a));
}

WExpectation W_expectation_bounds(int n_cell, const SoftPotentialUR& soft, double ell) {
  if (n_cell < 0) throw DomainError("cell occupancy must be nonnegative");
  if (!(ell > 0.0)) throw DomainError("cell side must be positive");
  const double Q = soft.area / (ell * ell);
  if (!(Q < 1.0)) throw DomainError("covered fraction Q = A/ell^2 must be below 1");
  WExpectation w;
  if (n_cell < 2 || Q == 0.0) return w;
  const double pairs = n_cell * (n_cell - 1.0);
  w.upper = pairs * Q / soft.nu;
  w.lower = w.upper / (1.0 + (n_cell - 1.0) * Q);
  w.second_moment_bound = n_cell / soft.nu * w.upper;
  return w;
}

double temple_K(double epsilon, double ell, double R, double nu, double area, int n) {
  const double Q = area / (ell * ell);
  const double denom = epsilon * nu / (ell * ell) - n * (n - 1.0) * Q;
  if (!(denom > 0.0)) {
    throw ValidityError("Temple condition fails: eps nu/ell^2 - n(n-1)Q = " +
                        std::to_string(denom) + " <= 0");
  }
  const double s = 1.0 - 2.0 * R / ell;
  return (1.0 - epsilon) * s * s / (1.0 + (n - 1.0) * Q) * (1.0 - n / denom);
}

TempleResult temple_cell_bound(const LowerBoundParams& p, const SoftPotentialUR& soft,
                               double mu) {
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (!(2.0 * p.R < p.ell)) throw DomainError("needs 2R < ell");
  if (p.n_cell < 2) throw DomainError("cell occupancy must be at least 2");
  TempleResult t;
  const double Q = soft.area / (p.ell * p.ell);
  t.denominator = p.epsilon * soft.nu / (p.ell * p.ell) - p.n_cell * (p.n_cell - 1.0) * Q;
  t.K = temple_K(p.epsilon, p.ell, p.R, soft.nu, soft.area, p.n_cell);
  t.cell_bound = mu * p.n_cell * (p.n_cell - 1.0) / (p.ell * p.ell) * (soft.area / soft.nu) * t.K;
  return t;
}

bool ConstraintFlags::all() const {
  for (const auto& [name, ok] : named()) {
    if (!ok) return false;
  }
  return true;
}

std::vector<std::pair<std::string, bool>> ConstraintFlags::named() const {
  return {{"epsilon_in_unit_interval", epsilon_in_unit_interval},
          {"R_above_R0", R_above_R0},
          {"two_R_below_ell", two_R_below_ell},
          {"rho_ell2_above_one", rho_ell2_above_one},
          {"covered_fraction_below_one", covered_fraction_below_one},
          {"temple_condition", temple_condition},
          {"ratio_within_budget", ratio_within_budget}};
}

ScatteringScale ScatteringScale::from_a(double a, double R0) {
  if (!(a > 0.0 && R0 > 0.0)) throw DomainError("scattering scale needs a > 0 and R0 > 0");
  return {R0, std::log(R0 / a)};
}

double ScatteringScale::log_rho_a2(double rho) const {
  return std::log(rho) + 2.0 * (std::log(R0) - log_R0_over_a);
}

LowerBoundReport assemble_lower_bound(const GasParameters& gas, const ScatteringScale& scale,
                                      double epsilon, double ell, double R) {
  const double sr = std::sqrt(gas.rho);
  return assemble_reduced(gas, scale, epsilon, ell * sr, R * sr);
}

LowerBoundReport assemble_lower_bound(const GasParameters& gas, double a, double R0,
                                      const LowerBoundParams& params) {
  return assemble_lower_bound(gas, ScatteringScale::from_a(a, R0), params.epsilon, params.ell,
                              params.R);
}

ScheduleValues schedule_values(double rho, double log_rho_a2, const ScheduleConstants& c) {
  if (!(rho > 0.0)) throw DomainError("density must be positive");
  if (!(log_rho_a2 < -1.0)) throw DomainError("schedule needs rho a^2 < e^-1");
  const double L = -log_rho_a2;
  const double inv_sr = 1.0 / std::sqrt(rho);
  return {c.epsilon * std::pow(L, -0.2), c.ell * inv_sr * std::pow(L, 0.1),
          c.R * inv_sr * std::pow(L, -0.1)};
}

LowerBoundParams schedule_parameters(const GasParameters& gas, const ScatteringScale& scale,
                                     const ScheduleConstants& c) {
  const ScheduleValues s = schedule_values(gas.rho, scale.log_rho_a2(gas.rho), c);
  if (!(2.0 * s.R < s.ell)) {
    throw DomainError("schedule violates 2R < ell at this density (needs |ln rho a^2| > " +
                      std::to_string(std::pow(2.0 * c.R / c.ell, 5.0)) + ")");
  }
  if (!(s.R > scale.R0)) throw DomainError("schedule violates R > R0 at this density");
  LowerBoundParams p;
  p.epsilon = s.epsilon;
  p.ell = s.ell;
  p.R = s.R;
  const double ell2_h = gas.rho * s.ell * s.ell;
  p.n_cell = std::max(2, static_cast<int>(std::ceil(4.0 * ell2_h)));
  p.Q = kPi * (s.R * s.R - scale.R0 * scale.R0) / (s.ell * s.ell);
  return p;
}

TempleMagnitudes schedule_magnitudes(const GasParameters& gas, const ScatteringScale& scale,
                                     const ScheduleConstants& c) {
  const double lr = scale.log_rho_a2(gas.rho);
  const ScheduleValues s = schedule_values(gas.rho, lr, c);
  const double sr = std::sqrt(gas.rho);
  const double ell_h = s.ell * sr, R_h = s.R * sr;
  const double log_R2_a2 = 2.0 * (std::log(R_h / (scale.R0 * sr)) + scale.log_R0_over_a);
  TempleMagnitudes m;
  m.lhs = s.epsilon * log_R2_a2 / (ell_h * ell_h);
  m.rhs = std::pow(ell_h, 4.0);
  const double L = -lr;
  m.lhs_over_L35 = m.lhs / std::pow(L, 0.6);
  m.rhs_over_L25 = m.rhs / std::pow(L, 0.4);
  return m;
}

LowerBoundReport scheduled_lower_bound(const GasParameters& gas, const ScatteringScale& scale,
                                       const ScheduleConstants& c) {
  const ScheduleValues s = schedule_values(gas.rho, scale.log_rho_a2(gas.rho), c);
  return assemble_lower_bound(gas, scale, s.epsilon, s.ell, s.R);
}

LowerBoundReport optimize_lower_bound(const GasParameters& gas, const ScatteringScale& scale,
                                      const LowerOptions& opt) {
  const double lr = scale.log_rho_a2(gas.rho);
  if (!(lr < -1.0)) throw DomainError("lower bound needs rho a^2 < e^-1");
  const double sr = std::sqrt(gas.rho);
  const double R0_h = scale.R0 * sr;

  using Point = std::array<double, 3>;  // (logit eps, ln ell_h, ln R_h)
  auto eval = [&](const Point& x) {
    return assemble_reduced(gas, scale, logistic(x[0]), std::exp(x[1]), std::exp(x[2]));
  };
  auto objective = [&](const Point& x) {
    const LowerBoundReport r = eval(x);
    return r.valid ? -r.leading_ratio : opt.penalty;
  };

  const LowerBoundReport scheduled = scheduled_lower_bound(gas, scale, opt.schedule);
  const ScheduleValues sv = schedule_values(gas.rho, lr, opt.schedule);
  std::vector<std::pair<double, Point>> seeds;
  seeds.push_back({objective({std::log(sv.epsilon / (1.0 - sv.epsilon)), std::log(sv.ell * sr),
                              std::log(sv.R * sr)}),
                   {std::log(sv.epsilon / (1.0 - sv.epsilon)), std::log(sv.ell * sr),
                    std::log(sv.R * sr)}});

  // Coarse grid over (eps, rho ell^2, R/ell) for starting points.
  const std::array<double, 11> eps_grid{0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::pair<double, Point>> grid_hits;
  for (double eps : eps_grid) {
    for (int i = 0; i < 24; ++i) {
      const double ell2 = std::exp(std::log(1.001) + (std::log(1e4) - std::log(1.001)) * i / 23);
      const double ell_h = std::sqrt(ell2);
      for (int j = 0; j < 16; ++j) {
        const double frac = std::exp(std::log(1e-3) + (std::log(0.49) - std::log(1e-3)) * j / 15);
        const double R_h = frac * ell_h;
        if (!(R_h > R0_h)) continue;
        const Point x{std::log(eps / (1.0 - eps)), std::log(ell_h), std::log(R_h)};
        const double val = objective(x);
        if (val < opt.penalty) grid_hits.push_back({val, x});
      }
    }
  }
  std::stable_sort(grid_hits.begin(), grid_hits.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  for (std::size_t i = 0; i < std::min<std::size_t>(4, grid_hits.size()); ++i) {
    seeds.push_back(grid_hits[i]);
  }

  double best_val = opt.penalty;
  Point best{};
  for (const auto& [val, x] : seeds) {
    if (val < best_val) {
      best_val = val;
      best = x;
    }
    if (!(val < opt.penalty)) continue;
    const auto res = opt::nelder_mead<3>(objective, x, {0.3, 0.1, 0.2}, opt.max_iterations);
    if (res.value < best_val) {
      best_val = res.value;
      best = res.x;
    }
  }
  if (!(best_val < opt.penalty)) {
    throw ValidityError("no feasible (eps, ell, R): the Temple condition fails everywhere at "
                        "ln(rho a^2) = " + std::to_string(lr));
  }
  LowerBoundReport out = eval(best);
  if (scheduled.valid && scheduled.leading_ratio > out.leading_ratio) out = scheduled;
  return out;
}

}  // namespace bose2d
