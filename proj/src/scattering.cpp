#include "bose2d/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bose2d/errors.hpp"
#include "bose2d/ode.hpp"
#include "bose2d/quadrature.hpp"

namespace bose2d {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dimension(int n) {
  if (n < 1 || n > 3) throw DomainError("radial ODE supports n = 1, 2, 3 only");
}

// Exterior harmonic continuation of F from (F(R0), F'(R0)).
double exterior_value(int n, double r0, double f0, double df0, double r) {
  switch (n) {
    case 1:
      return f0 + df0 * (r - r0);
    case 2:
      return f0 + r0 * df0 * std::log(r / r0);
    default:
      return f0 + r0 * r0 * df0 * (1.0 / r0 - 1.0 / r);
  }
}

double exterior_slope(int n, double r0, double df0, double r) {
  switch (n) {
    case 1:
      return df0;
    case 2:
      return r0 * df0 / r;
    default:
      return r0 * r0 * df0 / (r * r);
  }
}

struct Segment {
  double lo, hi;
  const Piece* piece;
};

// Power-series coefficients of the regular solution at r = 0 for
// f'' + (n-1) f'/r = s(r) f with s = sum_j s_j r^j.
std::vector<double> regular_series(const std::vector<double>& s, int n, int order) {
  std::vector<double> c(order + 1, 0.0);
  c[0] = 1.0;
  for (int k = 2; k <= order; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k - 2 && j < static_cast<int>(s.size()); ++j) acc += s[j] * c[k - 2 - j];
    c[k] = acc / (static_cast<double>(k) * (k + n - 2));
  }
  return c;
}

}  // namespace

ScatteringSolution make_scattering_solution(int n, double core, double range, double f_r0,
                                            double df_r0, RadialProfile interior,
                                            const SolverOptions& opt) {
  ScatteringSolution s;
  s.n_ = n;
  s.core_ = core;
  s.range_ = range;
  s.f_r0_ = f_r0;
  s.df_r0_ = df_r0;
  s.interior_ = std::move(interior);
  s.reference_R_ = 2.0 * range;
  s.method_ = "shooting/dopri5";
  const double ratio = f_r0 == 0.0 ? kInf : std::abs(df_r0) * range / f_r0;
  switch (n) {
    case 1:
      if (df_r0 == 0.0) throw DomainError("1D scattering length undefined for a constant minimizer");
      s.a_ = range - f_r0 / df_r0;
      s.log_r0_over_a_ = std::log(range / s.a_);
      break;
    case 2:
      if (ratio < opt.zero_a_threshold) {
        s.a_ = 0.0;
        s.log_r0_over_a_ = kInf;
      } else {
        s.log_r0_over_a_ = f_r0 / (range * df_r0);
        s.a_ = range * std::exp(-s.log_r0_over_a_);
      }
      break;
    default:
      if (ratio < opt.zero_a_threshold) {
        s.a_ = 0.0;
        s.log_r0_over_a_ = kInf;
      } else {
        s.a_ = range * range * df_r0 / (f_r0 + range * df_r0);
        s.log_r0_over_a_ = std::log(range / s.a_);
      }
      break;
  }
  return s;
}

ScatteringSolution ScatteringSolution::with_reference(double R) const {
  if (!(R > 0.0)) throw DomainError("reference radius must be > 0");
  ScatteringSolution s = *this;
  s.reference_R_ = R;
  return s;
}

double ScatteringSolution::raw_value(double r) const {
  if (r < core_) return 0.0;
  if (r >= range_ || interior_.empty()) return exterior_value(n_, range_, f_r0_, df_r0_, r);
  return interior_.value(r);
}

double ScatteringSolution::raw_derivative(double r) const {
  if (r < core_) return 0.0;
  if (r >= range_ || interior_.empty()) return exterior_slope(n_, range_, df_r0_, r);
  return interior_.derivative(r);
}

double ScatteringSolution::value(double r) const { return raw_value(r) / raw_value(reference_R_); }

double ScatteringSolution::derivative(double r) const {
  return raw_derivative(r) / raw_value(reference_R_);
}

double ScatteringSolution::asymptotic(double r) const {
  return exterior_value(n_, range_, f_r0_, df_r0_, r) /
         exterior_value(n_, range_, f_r0_, df_r0_, reference_R_);
}

std::vector<std::pair<double, double>> ScatteringSolution::samples(int exterior_points) const {
  std::vector<std::pair<double, double>> out;
  const double norm = raw_value(reference_R_);
  if (core_ > 0.0) out.emplace_back(core_, 0.0);
  if (!interior_.empty()) {
    for (double r : interior_.knots()) out.emplace_back(r, interior_.value(r) / norm);
  }
  if (reference_R_ > range_) {
    for (int i = 1; i <= exterior_points; ++i) {
      const double r = range_ + (reference_R_ - range_) * i / exterior_points;
      out.emplace_back(r, raw_value(r) / norm);
    }
  }
  return out;
}

ScatteringSolution solve_radial(const RadialPotential& v, double mu, int n,
                                const SolverOptions& opt) {
  require_valid(v);
  require_dimension(n);
  if (!(mu > 0.0)) throw DomainError("mu must be > 0");

  const double core = v.hard_core_radius();
  const double range = v.range();
  const double inv2mu = 1.0 / (2.0 * mu);

  if (core >= range) {
    // Pure hard disc: F = 0 at R0 with unit slope; exterior is exact.
    return make_scattering_solution(n, core, range, 0.0, 1.0, RadialProfile{}, opt);
  }

  std::vector<double> r_s, f_s, df_s, d2f_s;
  RadialProfile series_part;
  double start;
  ode::State fy{};  // (f, f') at the start of the current segment
  if (core > 0.0) {
    start = core;
    fy = {0.0, 1.0};
  } else {
    start = opt.start_fraction * range;
    const Piece& first = v.pieces().front();
    std::vector<double> s;
    if (const auto* poly = std::get_if<Polynomial>(&first.profile)) {
      for (double c : poly->coeffs) s.push_back(c * inv2mu);
    } else {
      s.push_back(first(start) * inv2mu);
    }
    const auto c = regular_series(s, n, 24);
    double f = 0.0, df = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) f = f * start + c[k];
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) df = df * start + k * c[k];
    fy = {f, df};
    series_part = RadialProfile::polynomial(c, 0.0, start);
  }

  std::vector<Segment> segments;
  for (const auto& p : v.pieces()) {
    const double lo = std::max(p.r_lo, start);
    const double hi = std::min(p.r_hi, range);
    if (lo < hi) segments.push_back({lo, hi, &p});
  }

  for (const Segment& seg : segments) {
    const Piece& piece = *seg.piece;
    auto s_of = [&](double r) { return piece(r) * inv2mu; };
    auto record = [&](double r, double f, double df) {
      if (f < 0.0) {
        throw SolverError("negative f at r = " + std::to_string(r) +
                          "; contradicts v >= 0 (integrator misconfigured)");
      }
      r_s.push_back(r);
      f_s.push_back(f);
      df_s.push_back(df);
      d2f_s.push_back(s_of(r) * f - (n - 1) * df / r);
    };
    ode::Options o;
    o.rtol = opt.rtol;
    o.atol = opt.rtol * 1e-4 * std::max(std::abs(fy[0]), std::abs(fy[1]) * seg.hi);
    if (seg.hi / seg.lo > opt.log_span) {
      // t = ln r, state (g, p) = (f, r f'): g' = p, p' = r^2 s g - (n-2) p.
      ode::State y{fy[0], seg.lo * fy[1]};
      const double t0 = std::log(seg.lo), t1 = std::log(seg.hi);
      o.max_step = (t1 - t0) / opt.min_steps_per_segment;
      ode::integrate_dopri5(
          [&](double t, const ode::State& z) {
            const double r = std::exp(t);
            return ode::State{z[1], r * r * s_of(r) * z[0] - (n - 2) * z[1]};
          },
          t0, t1, y, o,
          [&](double t, const ode::State& z, const ode::State&) {
            const double r = (t == t1) ? seg.hi : (t == t0 ? seg.lo : std::exp(t));
            record(r, z[0], z[1] / r);
          });
      fy = {y[0], y[1] / seg.hi};
    } else {
      ode::State y = fy;
      o.max_step = (seg.hi - seg.lo) / opt.min_steps_per_segment;
      ode::integrate_dopri5(
          [&](double r, const ode::State& z) {
            return ode::State{z[1], s_of(r) * z[0] - (n - 1) * z[1] / r};
          },
          seg.lo, seg.hi, y, o,
          [&](double r, const ode::State& z, const ode::State&) { record(r, z[0], z[1]); });
      fy = y;
    }
  }

  RadialProfile interior = series_part;
  if (!r_s.empty()) {
    RadialProfile body = RadialProfile::quintic_hermite(r_s, f_s, df_s, d2f_s);
    if (interior.empty()) {
      interior = std::move(body);
    } else {
      interior.extend(body);
    }
  }
  return make_scattering_solution(n, core, range, fy[0], fy[1], std::move(interior), opt);
}

}  // namespace bose2d

namespace bose2d {

double min_energy(double a, double R, double mu, int n) {
  if (n < 1) throw DomainError("dimension must be >= 1");
  if (!(a >= 0.0)) throw DomainError("scattering length must be >= 0");
  switch (n) {
    case 1:
      if (!(R > a)) throw DomainError("min_energy needs R > a");
      return 2.0 * mu / (R - a);
    case 2:
      if (!(R > a)) throw DomainError("min_energy needs R > a");
      if (a == 0.0) return 0.0;
      return 2.0 * std::numbers::pi * mu / std::log(R / a);
    default: {
      const double denom = 1.0 - a * std::pow(R, 2.0 - n);
      if (!(denom > 0.0)) throw DomainError("min_energy needs 1 - a R^{2-n} > 0");
      return 2.0 * std::pow(std::numbers::pi, 0.5 * n) * mu * a / (std::tgamma(0.5 * n) * denom);
    }
  }
}

double min_energy_2d_from_log(double log_R_over_a, double mu) {
  if (!(log_R_over_a > 0.0)) throw DomainError("min_energy needs ln(R/a) > 0");
  if (std::isinf(log_R_over_a)) return 0.0;
  return 2.0 * std::numbers::pi * mu / log_R_over_a;
}

double asymptotic_profile(double r, double a, double R, int n) {
  switch (n) {
    case 1:
      return (r - a) / (R - a);
    case 2:
      if (a == 0.0) return 1.0;
      return std::log(r / a) / std::log(R / a);
    default:
      return (1.0 - a * std::pow(r, 2.0 - n)) / (1.0 - a * std::pow(R, 2.0 - n));
  }
}

FunctionalMinimum minimize_functional(const RadialPotential& v, double R, double mu, int n,
                                      int grid_size) {
  require_valid(v);
  require_dimension(n);
  if (!(R > v.range())) throw DomainError("minimize_functional needs R > R0");
  if (grid_size < 64) throw DomainError("minimize_functional needs grid_size >= 64");

  const double r_start = v.hard_core_radius();
  const bool dirichlet_core = v.has_hard_core();

  // Nodes: every breakpoint inside (r_start, R) is a node; the remaining
  // budget is distributed in proportion to segment length.
  std::vector<double> edges{r_start};
  for (double b : v.breakpoints()) {
    if (b > r_start && b < R) edges.push_back(b);
  }
  edges.push_back(R);
  std::vector<double> r{r_start};
  const double total = R - r_start;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double len = edges[s + 1] - edges[s];
    const int m = std::max(2, static_cast<int>(std::lround(grid_size * len / total)));
    for (int k = 1; k <= m; ++k) r.push_back(edges[s] + len * k / m);
    r.back() = edges[s + 1];
  }
  const std::size_t N = r.size();
  const double omega = unit_sphere_area(n);

  // Tridiagonal global matrix: diag[i], off[i] couples i and i+1.
  std::vector<double> diag(N, 0.0), off(N - 1, 0.0);
  for (std::size_t e = 0; e + 1 < N; ++e) {
    const double lo = r[e], hi = r[e + 1], h = hi - lo;
    const double wk = quad::gauss_legendre8([&](double x) { return std::pow(x, n - 1); }, lo, hi);
    const double k = omega * mu * wk / (h * h);
    auto v_w = [&](double x) { return 0.5 * omega * v(x) * std::pow(x, n - 1); };
    const double m00 = quad::gauss_legendre8(
        [&](double x) { const double l = (hi - x) / h; return v_w(x) * l * l; }, lo, hi);
    const double m01 = quad::gauss_legendre8(
        [&](double x) { return v_w(x) * (hi - x) * (x - lo) / (h * h); }, lo, hi);
    const double m11 = quad::gauss_legendre8(
        [&](double x) { const double l = (x - lo) / h; return v_w(x) * l * l; }, lo, hi);
    diag[e] += k + m00;
    diag[e + 1] += k + m11;
    off[e] += -k + m01;
  }

  std::vector<double> phi(N, 0.0);
  phi[N - 1] = 1.0;
  const std::size_t first = dirichlet_core ? 1 : 0;
  const std::size_t last = N - 2;  // unknowns first..last
  if (first <= last) {
    // Thomas algorithm on A_uu phi_u = -A_uN.
    const std::size_t m = last - first + 1;
    std::vector<double> c(m, 0.0), d(m, 0.0);
    double prev_c = 0.0, prev_d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t g = first + i;
      const double lower = i == 0 ? 0.0 : off[g - 1];
      const double upper = (g + 1 <= last) ? off[g] : 0.0;
      double rhs = (g + 1 == N - 1) ? -off[g] * phi[N - 1] : 0.0;
      const double piv = diag[g] - lower * prev_c;
      if (!(std::abs(piv) > 1e-300) || !std::isfinite(piv)) {
        throw SolverError("singular discrete system in minimize_functional");
      }
      c[i] = upper / piv;
      d[i] = (rhs - lower * prev_d) / piv;
      prev_c = c[i];
      prev_d = d[i];
    }
    for (std::size_t i = m; i-- > 0;) {
      const std::size_t g = first + i;
      phi[g] = d[i] - (i + 1 < m ? c[i] * phi[g + 1] : 0.0);
    }
  }

  double energy = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    energy += diag[i] * phi[i] * phi[i];
    if (i + 1 < N) energy += 2.0 * off[i] * phi[i] * phi[i + 1];
  }
  return {energy, std::move(r), std::move(phi)};
}

LemmaReport check_lemma_properties(const RadialPotential& v, const RadialPotential* v_tilde,
                                   double mu, int n, double R, double tol, int grid) {
  LemmaReport rep;
  rep.tolerance = tol;
  const ScatteringSolution sol = solve_radial(v, mu, n).with_reference(R);
  if (!(R > v.range())) throw DomainError("lemma check needs R > R0");
  rep.a = sol.a();

  std::vector<double> rs;
  for (int i = 1; i <= grid; ++i) rs.push_back(R * i / grid);
  for (double b : v.breakpoints()) {
    if (b > 0.0 && b <= R) rs.push_back(b);
  }
  std::sort(rs.begin(), rs.end());

  rep.bound_margin = std::numeric_limits<double>::infinity();
  rep.monotone_margin = std::numeric_limits<double>::infinity();
  double prev = sol.value(rs.front());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double f = sol.value(rs[i]);
    rep.bound_margin = std::min(rep.bound_margin, f - sol.asymptotic(rs[i]));
    if (i > 0) rep.monotone_margin = std::min(rep.monotone_margin, f - prev);
    prev = f;
  }
  rep.bound_holds = rep.bound_margin >= -tol;
  rep.monotone_holds = rep.monotone_margin >= -tol;

  if (v_tilde != nullptr) {
    if (v_tilde->hard_core_radius() > v.hard_core_radius()) {
      throw DomainError("comparison needs v >= v_tilde: v_tilde has the larger hard core");
    }
    for (double r : rs) {
      for (double x : {r, r * (1.0 - 1e-9)}) {
        if (x < v.hard_core_radius()) continue;
        if (v(x) < (*v_tilde)(x)) {
          throw DomainError("comparison needs v >= v_tilde pointwise; fails at r = " +
                            std::to_string(x));
        }
      }
    }
    const ScatteringSolution st = solve_radial(*v_tilde, mu, n).with_reference(R);
    rep.comparison_checked = true;
    rep.a_tilde = st.a();
    rep.comparison_margin = std::numeric_limits<double>::infinity();
    for (double r : rs) {
      if (r >= R) continue;
      rep.comparison_margin = std::min(rep.comparison_margin, st.value(r) - sol.value(r));
    }
    rep.comparison_holds = rep.comparison_margin >= -tol && rep.a >= rep.a_tilde * (1.0 - tol);
  }
  return rep;
}

InequalityReport integral_inequalities(const RadialPotential& v, const ScatteringSolution& sol,
                                       double mu) {
  InequalityReport rep;
  const int n = sol.dimension();
  rep.dimension = n;
  if (v.has_hard_core()) {
    rep.status = InequalityReport::Status::trivial_hard_core;
    rep.lhs = std::numeric_limits<double>::infinity();
    rep.note = "hard core: int v = +inf, inequality holds trivially";
    return rep;
  }
  const double R0 = v.range();
  rep.lhs = full_space_integral(v.truncated(R0), n);
  switch (n) {
    case 1:
      rep.rhs = 4.0 * mu / (R0 - sol.a());
      break;
    case 2:
      if (std::isinf(sol.log_range_over_a())) {
        rep.status = InequalityReport::Status::degenerate_zero_a;
        rep.note = "a = 0: inequality degenerate, skipped";
        return rep;
      }
      rep.rhs = 4.0 * std::numbers::pi * mu / sol.log_range_over_a();
      break;
    default:
      rep.rhs = 4.0 * std::pow(std::numbers::pi, 0.5 * n) * mu * sol.a() / std::tgamma(0.5 * n);
      break;
  }
  rep.slack = rep.lhs - rep.rhs;
  return rep;
}

InequalityReport integral_inequalities(const RadialPotential& v, double mu, int n) {
  if (v.has_hard_core()) {
    InequalityReport rep;
    rep.dimension = n;
    rep.status = InequalityReport::Status::trivial_hard_core;
    rep.lhs = std::numeric_limits<double>::infinity();
    rep.note = "hard core: int v = +inf, inequality holds trivially";
    return rep;
  }
  return integral_inequalities(v, solve_radial(v, mu, n), mu);
}

InfiniteRangeResult infinite_range_a(const RadialPotential& v, double mu, int n,
                                     const std::vector<double>& cutoffs, double monotone_tol,
                                     const SolverOptions& opt) {
  if (cutoffs.empty()) throw DomainError("infinite_range_a needs at least one cutoff");
  if (v.tail() && !(v.tail()->exponent > n)) {
    throw DomainError("tail r^-p needs p > n for a finite moment");
  }
  InfiniteRangeResult out;
  double prev_cut = 0.0;
  for (double rc : cutoffs) {
    if (!(rc > prev_cut) || !(rc >= v.range())) {
      throw DomainError("cutoffs must increase and be >= R0");
    }
    prev_cut = rc;
    const double a = solve_radial(v.truncated(rc), mu, n, opt).a();
    if (!out.a_values.empty() && a < out.a_values.back() * (1.0 - monotone_tol)) {
      throw SolverError("a(R_c) decreased between cutoffs " + std::to_string(out.cutoffs.back()) +
                        " and " + std::to_string(rc) + "; solver inaccurate");
    }
    out.cutoffs.push_back(rc);
    out.a_values.push_back(a);
  }
  const auto& s = out.a_values;
  const std::size_t m = s.size();
  auto aitken = [&](std::size_t k) {
    const double d1 = s[k - 1] - s[k - 2], d2 = s[k] - s[k - 1];
    const double den = d2 - d1;
    if (den == 0.0 || d2 == 0.0) return s[k];
    return s[k] - d2 * d2 / den;
  };
  if (m >= 3) {
    out.limit = aitken(m - 1);
    const double scale = std::max(std::abs(out.limit), 1e-300);
    const double prev = m >= 4 ? aitken(m - 2) : s[m - 1];
    out.converged = std::abs(out.limit - prev) <= 1e-7 * scale ||
                    std::abs(s[m - 1] - s[m - 2]) <= 1e-12 * scale;
  } else {
    out.limit = s.back();
    out.converged = m >= 2 && std::abs(s[m - 1] - s[m - 2]) <= 1e-12 * std::abs(s.back());
  }
  return out;
}

}  // namespace bose2d
