#include "bose2d/dyson.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>

#include "bose2d/errors.hpp"
#include "bose2d/lower_bound.hpp"
#include "bose2d/quadrature.hpp"
#include "bose2d/random_instances.hpp"

namespace bose2d {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr quad::Tolerance kTol{1e-14, 1e-12};

std::vector<double> split_points(double lo, double hi, std::initializer_list<const std::vector<double>*> lists) {
  std::vector<double> pts{lo, hi};
  for (const auto* l : lists) {
    for (double x : *l) {
      if (x > lo && x < hi) pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double integrate_pieces(const std::function<double(double)>& g, const std::vector<double>& pts) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    sum += quad::integrate_or_throw(g, pts[i], pts[i + 1], kTol);
  }
  return sum;
}

void require_vanishing_in_core(const RadialFunction& f, const RadialPotential& v) {
  const double rc = v.hard_core_radius();
  if (rc <= 0.0) return;
  for (int i = 0; i < 33; ++i) {
    const double r = rc * i / 32.0 * (1.0 - 1e-12);
    if (f(r) != 0.0) {
      throw DomainError("trial function must vanish inside the hard core (f(" + std::to_string(r) +
                        ") != 0)");
    }
  }
}

// int_0^hi (mu f'^2 + v f^2/2) r dr, skipping the hard core where f = 0.
double energy_integral(const RadialFunction& f, const RadialPotential& v, double mu, double hi) {
  const std::vector<double> vb = v.breakpoints();
  const std::vector<double> pts = split_points(0.0, hi, {&f.breakpoints, &vb});
  const double rc = v.hard_core_radius();
  return integrate_pieces(
      [&](double r) {
        const double d = f.d(r);
        double e = mu * d * d;
        if (r > rc) {
          const double x = f(r);
          e += 0.5 * v(r) * x * x;
        }
        return e * r;
      },
      pts);
}

double U_integral(const RadialFunction& f, const RadialPotential& U, double mu, double hi) {
  const std::vector<double> ub = U.breakpoints();
  const std::vector<double> pts = split_points(0.0, hi, {&f.breakpoints, &ub});
  return mu * integrate_pieces(
                  [&](double r) {
                    const double x = f(r);
                    return U(r) * x * x * r;
                  },
                  pts);
}

void check_inputs(const StarDomain& domain, const RadialPotential& v, const RadialPotential& U,
                  double a, int n_angles, double& moment) {
  if (n_angles < 1) throw DomainError("need at least one angle");
  if (!domain.valid()) throw DomainError("star domain needs R(theta) > 0");
  if (v.tail()) throw DomainError("Dyson check needs v = 0 beyond R0 (no tail)");
  const UAdmissibility adm = check_U_admissible(U, a, v.range());
  if (!adm.admissible) {
    throw DomainError("U is not admissible: moment " + std::to_string(adm.moment) +
                      (adm.vanishes_inside_R0 ? "" : ", nonzero inside R0"));
  }
  moment = adm.moment;
}

DysonReport assemble(std::vector<AngleSides> sides, double moment) {
  DysonReport rep;
  rep.n_angles = static_cast<int>(sides.size());
  rep.U_moment = moment;
  rep.min_slack = std::numeric_limits<double>::infinity();
  const double w = 2.0 * kPi / rep.n_angles;
  for (const AngleSides& s : sides) {
    rep.min_slack = std::min(rep.min_slack, s.lhs - s.rhs);
    rep.total_lhs += w * s.lhs;
    rep.total_rhs += w * s.rhs;
    if (s.trivial) ++rep.n_trivial;
  }
  rep.total_slack = rep.total_lhs - rep.total_rhs;
  rep.angles = std::move(sides);
  return rep;
}

struct Trial {
  RadialPotential v;
  RadialPotential U;
  double a = 0.0;
  StarDomain domain;
  AngularFamily phi;
};

Trial make_trial(std::uint64_t seed, int index) {
  std::mt19937_64 rng = trial_engine(seed, static_cast<std::uint64_t>(index));
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  Trial t;
  RandomWellOptions wo;
  wo.min_height = 0.5;
  wo.hard_core_probability = 0.2;
  t.v = random_well(rng, wo);
  const double R0 = t.v.range();
  t.a = solve_radial(t.v, 1.0, 2).a();

  const double R_U = uni(1.05, 4.0) * R0;
  const double lambda = uni(0.2, 1.0);
  if (uni(0.0, 1.0) < 0.5) {
    const SoftPotentialUR s = SoftPotentialUR::make(R0, R_U, t.a);
    t.U = RadialPotential::piecewise_constant(0.0, {{R0, 0.0}, {R_U, lambda / s.nu}});
  } else {
    std::vector<std::pair<double, double>> steps{{R0, 0.0}};
    const int k = 3;
    for (int i = 1; i <= k; ++i) steps.push_back({R0 + (R_U - R0) * i / k, uni(0.0, 1.0)});
    const RadialPotential raw = RadialPotential::piecewise_constant(0.0, steps);
    const double m = radial_moment(raw, Weight::log_ratio(t.a), 0.0, R_U);
    for (std::size_t i = 1; i < steps.size(); ++i) steps[i].second *= lambda / m;
    t.U = RadialPotential::piecewise_constant(0.0, steps);
  }

  const double Rd = uni(0.5, 5.0) * R0;
  const double c1 = uni(0.0, 0.3), c2 = uni(0.0, 0.3), p1 = uni(0.0, 2 * kPi), p2 = uni(0.0, 2 * kPi);
  t.domain.boundary = [=](double th) {
    return Rd * (1.0 + c1 * std::cos(th + p1) + c2 * std::cos(2.0 * th + p2));
  };
  const double r_max = Rd * 1.6;
  const double rc = t.v.hard_core_radius();
  const RadialProfile s = random_positive_spline(rng, rc, r_max, 6);
  const double width = 0.2 * R0;
  RadialFunction base;
  base.support_start = rc;
  base.breakpoints = s.knots();
  if (rc > 0.0) {
    base.value = [s, rc, width](double r) { return s.value(r) * (1.0 - std::exp(-(r - rc) / width)); };
    base.derivative = [s, rc, width](double r) {
      const double e = std::exp(-(r - rc) / width);
      return s.derivative(r) * (1.0 - e) + s.value(r) * e / width;
    };
  } else {
    base.value = [s](double r) { return s.value(r); };
    base.derivative = [s](double r) { return s.derivative(r); };
  }
  const double amp = uni(0.0, 0.9), th0 = uni(0.0, 2 * kPi);
  t.phi = [base, amp, th0](double th) { return base.scaled(1.0 + amp * std::cos(th - th0)); };
  return t;
}

DysonSuiteReport summarize(std::vector<DysonReport> reports, std::uint64_t seed, int n_angles,
                           double tol) {
  DysonSuiteReport s;
  s.n_trials = static_cast<int>(reports.size());
  s.seed = seed;
  s.n_angles = n_angles;
  s.tolerance = tol;
  s.min_slack = std::numeric_limits<double>::infinity();
  s.min_total_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.n_trials; ++i) {
    if (reports[i].min_slack < s.min_slack) {
      s.min_slack = reports[i].min_slack;
      s.worst_trial = i;
    }
    s.min_total_slack = std::min(s.min_total_slack, reports[i].total_slack);
  }
  if (s.n_trials == 0) s.min_slack = s.min_total_slack = 0.0;
  s.all_pass = s.min_slack >= -tol && s.min_total_slack >= -tol;
  return s;
}

}  // namespace

RadialFunction RadialFunction::constant(double c) {
  RadialFunction f;
  f.value = [c](double) { return c; };
  f.derivative = [](double) { return 0.0; };
  return f;
}

RadialFunction RadialFunction::from_profile(RadialProfile p) {
  if (p.empty()) throw DomainError("empty profile");
  RadialFunction f;
  f.support_start = p.r_min();
  f.breakpoints = p.knots();
  f.value = [p](double r) { return p.value(r); };
  f.derivative = [p](double r) { return p.derivative(r); };
  return f;
}

RadialFunction RadialFunction::minimizer(const ScatteringSolution& sol, double R) {
  if (!(R > sol.range())) throw DomainError("minimizer profile needs R > R0");
  const ScatteringSolution s = sol.with_reference(R);
  RadialFunction f;
  f.support_start = s.core_radius();
  f.breakpoints = s.interior().knots();
  f.breakpoints.push_back(s.range());
  f.breakpoints.push_back(R);
  f.value = [s, R](double r) { return r >= R ? 1.0 : s.value(r); };
  f.derivative = [s, R](double r) { return r > R ? 0.0 : s.derivative(r); };
  return f;
}

RadialFunction RadialFunction::scaled(double c) const {
  RadialFunction f = *this;
  f.value = [v = value, c](double r) { return c * v(r); };
  f.derivative = [d = derivative, c](double r) { return c * d(r); };
  return f;
}

StarDomain StarDomain::disc(double radius) {
  if (!(radius > 0.0)) throw DomainError("disc radius must be positive");
  return {[radius](double) { return radius; }};
}

bool StarDomain::valid(int samples) const {
  if (!boundary) return false;
  for (int i = 0; i < samples; ++i) {
    const double R = boundary(2.0 * kPi * i / samples);
    if (!(R > 0.0) || !std::isfinite(R)) return false;
  }
  return true;
}

UAdmissibility check_U_admissible(const RadialPotential& U, double a, double R0, double tol) {
  UAdmissibility r;
  r.vanishes_inside_R0 = !U.has_hard_core();
  for (const Piece& p : U.pieces()) {
    if (!r.vanishes_inside_R0 || p.r_lo >= R0) continue;
    const double hi = std::min(p.r_hi, R0);
    for (int i = 0; i < 33; ++i) {
      const double x = p.r_lo + (hi - p.r_lo) * i / 32.0 * (1.0 - 1e-12);
      if (std::abs(p(x)) > 0.0) {
        r.vanishes_inside_R0 = false;
        break;
      }
    }
  }
  if (U.has_hard_core()) {
    r.moment = std::numeric_limits<double>::infinity();
  } else {
    const double hi = U.tail() ? std::numeric_limits<double>::infinity() : U.range();
    r.moment = radial_moment(U, Weight::log_ratio(a), 0.0, hi);
  }
  r.admissible = r.vanishes_inside_R0 && r.moment <= 1.0 + tol;
  return r;
}

PointwiseReport check_pointwise(const RadialFunction& f, const RadialPotential& v, double mu,
                                double a, double R, double R_max) {
  if (!(R > v.range() && R <= R_max)) throw DomainError("pointwise check needs R0 < R <= R_max");
  if (!(a > 0.0 && a < R)) throw DomainError("pointwise check needs 0 < a < R");
  require_vanishing_in_core(f, v);
  PointwiseReport p;
  p.lhs = 2.0 * kPi * energy_integral(f, v, mu, R_max);
  const double fR = f(R);
  p.rhs = 2.0 * kPi * mu / std::log(R / a) * fR * fR;
  p.slack = p.lhs - p.rhs;
  return p;
}

AngleSides radial_sides(const RadialFunction& f, const RadialPotential& v,
                        const RadialPotential& U, double mu, double R0, double boundary) {
  require_vanishing_in_core(f, v);
  AngleSides s;
  s.boundary = boundary;
  s.lhs = energy_integral(f, v, mu, boundary);
  s.trivial = boundary <= R0;
  s.rhs = s.trivial ? 0.0 : U_integral(f, U, mu, boundary);
  return s;
}

DysonReport check_dyson_inequality_serial(const StarDomain& domain, const AngularFamily& phi,
                                          const RadialPotential& v, const RadialPotential& U,
                                          double mu, double a, int n_angles) {
  double moment = 0.0;
  check_inputs(domain, v, U, a, n_angles, moment);
  std::vector<AngleSides> sides(n_angles);
  for (int k = 0; k < n_angles; ++k) {
    const double th = 2.0 * kPi * k / n_angles;
    sides[k] = radial_sides(phi(th), v, U, mu, v.range(), domain.boundary(th));
    sides[k].theta = th;
  }
  return assemble(std::move(sides), moment);
}

DysonReport check_dyson_inequality(const StarDomain& domain, const AngularFamily& phi,
                                   const RadialPotential& v, const RadialPotential& U, double mu,
                                   double a, int n_angles) {
  double moment = 0.0;
  check_inputs(domain, v, U, a, n_angles, moment);
  std::vector<AngleSides> sides(n_angles);
  std::vector<std::exception_ptr> errors(n_angles);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n_angles; ++k) {
    try {
      const double th = 2.0 * kPi * k / n_angles;
      sides[k] = radial_sides(phi(th), v, U, mu, v.range(), domain.boundary(th));
      sides[k].theta = th;
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return assemble(std::move(sides), moment);
}

GradientComparison compare_gradients(const RadialFunction& f,
                                     const std::function<double(double)>& g,
                                     const std::function<double(double)>& dg,
                                     const RadialPotential& v, double mu, double R_d,
                                     int n_angles) {
  require_vanishing_in_core(f, v);
  const double A = energy_integral(f, v, mu, R_d);
  double G0 = 0.0, G1 = 0.0;
  for (int k = 0; k < n_angles; ++k) {
    const double th = 2.0 * kPi * k / n_angles;
    G0 += g(th) * g(th);
    G1 += dg(th) * dg(th);
  }
  G0 *= 2.0 * kPi / n_angles;
  G1 *= 2.0 * kPi / n_angles;
  GradientComparison c;
  c.radial_only = A * G0;
  const std::vector<double> pts = split_points(0.0, R_d, {&f.breakpoints});
  double B = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const quad::Result r = quad::integrate(
        [&](double x) {
          const double y = f(x);
          return x > 0.0 ? mu * y * y / x : 0.0;
        },
        pts[i], pts[i + 1], kTol);
    if (!r.converged) {
      B = std::numeric_limits<double>::infinity();
      break;
    }
    B += r.value;
  }
  c.full = G1 > 0.0 ? c.radial_only + B * G1 : c.radial_only;
  return c;
}

DysonSuiteReport run_dyson_suite_serial(int trials, std::uint64_t seed, int n_angles,
                                        double tol) {
  std::vector<DysonReport> reports(std::max(trials, 0));
  for (int i = 0; i < trials; ++i) {
    const Trial t = make_trial(seed, i);
    reports[i] = check_dyson_inequality_serial(t.domain, t.phi, t.v, t.U, 1.0, t.a, n_angles);
  }
  return summarize(std::move(reports), seed, n_angles, tol);
}

DysonSuiteReport run_dyson_suite(int trials, std::uint64_t seed, int n_angles, double tol) {
  std::vector<DysonReport> reports(std::max(trials, 0));
  std::vector<std::exception_ptr> errors(reports.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < trials; ++i) {
    try {
      const Trial t = make_trial(seed, i);
      reports[i] = check_dyson_inequality_serial(t.domain, t.phi, t.v, t.U, 1.0, t.a, n_angles);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return summarize(std::move(reports), seed, n_angles, tol);
}

}  // namespace bose2d
