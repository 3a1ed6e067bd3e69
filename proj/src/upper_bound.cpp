#include "bose2d/upper_bound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bose2d/errors.hpp"
#include "bose2d/optimize.hpp"
#include "bose2d/quadrature.hpp"

namespace bose2d {
namespace {

constexpr double kPi = std::numbers::pi;

// Integrals of the unnormalized F over the ODE interval [core or 0, R0].
struct InteriorMoments {
  double f2_r = 0.0;    // int F^2 r dr
  double ffp_r = 0.0;   // int F F' r dr
  double kin_r = 0.0;   // int (mu F'^2 + v F^2 / 2) r dr
  double f2 = 0.0;      // int F^2 dr
};

InteriorMoments interior_moments(const ScatteringSolution& sol, const RadialPotential& v,
                                 double mu) {
  InteriorMoments m;
  const RadialProfile& p = sol.interior();
  if (p.empty()) return m;
  const auto& knots = p.knots();
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i], hi = knots[i + 1];
    m.f2_r += quad::gauss_legendre8([&](double r) { const double f = p.value(r); return f * f * r; }, lo, hi);
    m.ffp_r += quad::gauss_legendre8([&](double r) { return p.value(r) * p.derivative(r) * r; }, lo, hi);
    m.kin_r += quad::gauss_legendre8(
        [&](double r) {
          const double f = p.value(r), d = p.derivative(r);
          return (mu * d * d + 0.5 * v(r) * f * f) * r;
        },
        lo, hi);
    m.f2 += quad::gauss_legendre8([&](double r) { const double f = p.value(r); return f * f; }, lo, hi);
  }
  return m;
}

// Exterior F(u) = F(R0) + c u with u = ln(r/R0), c = R0 F'(R0).
struct Exterior {
  double f0, c, r0;
  double F(double u) const { return f0 + c * u; }
};

struct Evaluator {
  const ScatteringSolution& sol;
  const RadialPotential& v;
  double mu;
  InteriorMoments in;
  Exterior ext;
  quad::Tolerance tol;

  Evaluator(const ScatteringSolution& s, const RadialPotential& pot, double mu_,
            double rtol = UpperOptions{}.quadrature_rtol)
      : sol(s), v(pot), mu(mu_), in(interior_moments(s, pot, mu_)),
        ext{s.raw_value_at_range(), s.range() * s.raw_slope_at_range(), s.range()},
        tol{1e-300, rtol} {}

  double Fb(double b) const { return ext.F(std::log(b / ext.r0)); }

  IJK ijk(double b) const {
    const double W = std::log(b / ext.r0);
    const double fb = ext.F(W);
    const double fb2 = fb * fb;
    const double rc = sol.core_radius();
    const double r0 = ext.r0;
    IJK out;
    // I: exact pi r_c^2 inside the core, sampled minimizer on [r_c, R0],
    // quadrature in u on [R0, b] with 1 - f^2 = c (W-u)(2 Fb - c (W-u)) / Fb^2.
    const double I_in = kPi * rc * rc + kPi * (r0 * r0 - rc * rc) - 2.0 * kPi * in.f2_r / fb2;
    const double I_ext = quad::integrate_or_throw(
        [&](double u) {
          const double w = W - u;
          const double r = r0 * std::exp(u);
          return ext.c * w * (2.0 * fb - ext.c * w) * r * r;
        },
        0.0, W, tol);
    out.I = I_in + 2.0 * kPi * I_ext / fb2;
    // K = 2 pi int f f' r dr; exterior f f' r dr = F c r du / Fb^2.
    const double K_ext = quad::integrate_or_throw(
        [&](double u) { return ext.F(u) * ext.c * r0 * std::exp(u); }, 0.0, W, tol);
    out.K = 2.0 * kPi * (in.ffp_r + K_ext) / fb2;
    out.J = 2.0 * kPi * mu * ext.c / fb;
    return out;
  }

  double J_quadrature(double b) const {
    const double W = std::log(b / ext.r0);
    const double fb = Fb(b);
    const double ext_kin = quad::integrate_or_throw(
        [&](double) { return mu * ext.c * ext.c; }, 0.0, W, tol);
    return 2.0 * kPi * (in.kin_r + ext_kin) / (fb * fb);
  }

  double K_parts(double b) const {
    const double W = std::log(b / ext.r0);
    const double fb = Fb(b);
    const double f2_ext = quad::integrate_or_throw(
        [&](double u) { const double F = ext.F(u); return F * F * ext.r0 * std::exp(u); }, 0.0, W,
        tol);
    return kPi * b - kPi * (in.f2 + f2_ext) / (fb * fb);
  }

  UpperBoundReport report(const GasParameters& gas, double b) const {
    UpperBoundReport rep;
    const IJK q = ijk(b);
    rep.b = b;
    rep.I = q.I;
    rep.J = q.J;
    rep.K = q.K;
    rep.rho_I = gas.rho * q.I;
    if (!(rep.rho_I < 1.0)) {
      throw ValidityError("density too high for this b: rho I = " + std::to_string(rep.rho_I) +
                          " >= 1");
    }
    const double d = 1.0 - rep.rho_I;
    const double rk = gas.rho * q.K;
    rep.energy_per_particle = gas.rho * q.J / d + (2.0 / 3.0) * gas.mu * rk * rk / (d * d);
    rep.near_inadmissible = rep.rho_I > 0.95;
    const double log_rho_a2 = std::log(gas.rho) - 2.0 * sol.log_range_over_a() + 2.0 * std::log(ext.r0);
    if (log_rho_a2 < 0.0) rep.leading_term = asymptotic_energy(gas.mu, gas.rho, log_rho_a2);
    rep.note =
        "periodic boundary conditions; Dirichlet localization adds O(L^-2) per particle, "
        "which vanishes in the thermodynamic limit";
    return rep;
  }
};

void require_2d(const ScatteringSolution& sol) {
  if (sol.dimension() != 2) throw DomainError("upper bound is two-dimensional only");
}

}  // namespace

TrialFunction::TrialFunction(ScatteringSolution solution, double b)
    : sol_(std::move(solution)), b_(b) {
  require_2d(sol_);
  if (!(b > sol_.range())) throw DomainError("trial function needs b > R0");
  sol_ = sol_.with_reference(b);
}

double TrialFunction::value(double r) const { return r >= b_ ? 1.0 : sol_.value(r); }

double TrialFunction::derivative(double r) const { return r > b_ ? 0.0 : sol_.derivative(r); }

IJK compute_IJK(const TrialFunction& trial, const RadialPotential& v, double mu) {
  return Evaluator(trial.solution(), v, mu).ijk(trial.b());
}

double J_by_quadrature(const TrialFunction& trial, const RadialPotential& v, double mu) {
  return Evaluator(trial.solution(), v, mu).J_quadrature(trial.b());
}

double K_by_parts(const TrialFunction& trial, const RadialPotential& v) {
  return Evaluator(trial.solution(), v, 1.0).K_parts(trial.b());
}

UpperBoundReport bound_at_b(const GasParameters& gas, const RadialPotential& v,
                            const ScatteringSolution& sol, double b) {
  require_2d(sol);
  if (!(b > sol.range())) throw DomainError("bound_at_b needs b > R0");
  return Evaluator(sol, v, gas.mu).report(gas, b);
}

UpperBoundReport bound_at_b(const GasParameters& gas, const RadialPotential& v, double b) {
  return bound_at_b(gas, v, solve_radial(v, gas.mu, 2), b);
}

UpperBoundReport optimize_b(const GasParameters& gas, const RadialPotential& v,
                            const ScatteringSolution& sol, const UpperOptions& opt) {
  require_2d(sol);
  const double r0 = sol.range();
  const double log_rho_a2 = std::log(gas.rho) + 2.0 * (std::log(r0) - sol.log_range_over_a());
  if (!(log_rho_a2 < 0.0)) throw DomainError("optimize_b needs rho a^2 < 1");
  const double b_star = 1.0 / std::sqrt(2.0 * kPi * gas.rho);
  if (!(r0 < b_star)) {
    throw DomainError("optimize_b needs R0 < (2 pi rho)^{-1/2}");
  }
  const Evaluator ev(sol, v, gas.mu, opt.quadrature_rtol);
  auto rho_I = [&](double b) { return gas.rho * ev.ijk(b).I; };

  double lo = std::log(r0) + 1e-9;
  double hi = std::log(opt.b_max_factor * b_star);
  if (!(rho_I(std::exp(lo)) < 1.0)) {
    throw ValidityError("no admissible b: rho I >= 1 on all of (R0, b_max]");
  }
  if (!(rho_I(std::exp(hi)) < 1.0)) {
    // rho I is increasing in b; bisect for the admissibility edge.
    double a = lo, c = hi;
    for (int i = 0; i < 200 && c - a > 1e-13 * std::abs(c); ++i) {
      const double m = 0.5 * (a + c);
      (rho_I(std::exp(m)) < 1.0 ? a : c) = m;
    }
    hi = a;
  }

  auto objective = [&](double log_b) {
    try {
      return ev.report(gas, std::exp(log_b)).energy_per_particle;
    } catch (const ValidityError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const int n = std::max(opt.scan_points, 3);
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = lo + (hi - lo) * i / (n - 1);
    const double val = objective(grid[i]);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  const double a = grid[std::max(best - 1, 0)];
  const double c = grid[std::min(best + 1, n - 1)];
  const opt::ScalarMin m = opt::golden_section(objective, a, c, opt.log_b_tolerance);
  double b_opt = m.value < best_val ? std::exp(m.x) : std::exp(grid[best]);
  if (b_star < std::exp(hi) && objective(std::log(b_star)) < objective(std::log(b_opt))) {
    b_opt = b_star;
  }
  return ev.report(gas, b_opt);
}

UpperBoundReport optimize_b(const GasParameters& gas, const RadialPotential& v,
                            const UpperOptions& opt) {
  return optimize_b(gas, v, solve_radial(v, gas.mu, 2), opt);
}

double asymptotic_energy(double mu, double rho, double log_rho_a2) {
  if (!(log_rho_a2 < 0.0)) throw DomainError("asymptotic form needs rho a^2 < 1");
  return 4.0 * kPi * mu * rho / std::abs(log_rho_a2);
}

double asymptotic_upper(const GasParameters& gas, double a) {
  if (!(a > 0.0)) throw DomainError("asymptotic form needs a > 0");
  return asymptotic_energy(gas.mu, gas.rho, std::log(gas.rho) + 2.0 * std::log(a));
}

}  // namespace bose2d
