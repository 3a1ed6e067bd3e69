#include "bose2d/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bose2d/errors.hpp"
#include "bose2d/quadrature.hpp"

namespace bose2d {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEdgeTol = 1e-12;

std::string fmt_interval(double lo, double hi) {
  std::ostringstream s;
  s.precision(6);
  s << "[" << lo << ", " << hi << "]";
  return s.str();
}

// Antiderivative-based closed form for int_lo^hi c r^e w(r) r dr.
double monomial_moment(double c, double e, const Weight& w, double lo, double hi) {
  if (c == 0.0 || lo == hi) return 0.0;
  double m = e + 1.0;
  if (w.kind == Weight::Kind::power) m += w.k;
  const double p = m + 1.0;  // exponent after integration
  if (lo == 0.0 && p <= 0.0) {
    throw DomainError("radial moment diverges at r = 0");
  }
  if (std::isinf(hi) && p >= 0.0) {
    throw DomainError("radial moment diverges at r = infinity");
  }
  if (w.kind != Weight::Kind::log_ratio) {
    if (p == 0.0) return c * std::log(hi / lo);
    const double top = std::isinf(hi) ? 0.0 : std::pow(hi, p);
    return c * (top - std::pow(lo, p)) / p;
  }
  auto G = [&](double r) -> double {
    if (r == 0.0 || std::isinf(r)) return 0.0;
    const double l = std::log(r / w.a);
    if (p == 0.0) return 0.5 * l * l;
    return std::pow(r, p) / p * (l - 1.0 / p);
  };
  return c * (G(hi) - G(lo));
}

}  // namespace

double Polynomial::operator()(double r) const {
  double s = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * r + *it;
  return s;
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; });
}

double Piece::operator()(double r) const {
  return std::visit([r](const auto& p) { return p(r); }, profile);
}

double PowerTail::operator()(double r) const {
  return coefficient * std::pow(r, -exponent);
}

double Weight::operator()(double r) const {
  switch (kind) {
    case Kind::one:
      return 1.0;
    case Kind::log_ratio:
      return std::log(r / a);
    case Kind::power:
      return std::pow(r, k);
  }
  return 1.0;
}

RadialPotential::RadialPotential(double hard_core_radius, std::vector<Piece> pieces,
                                 double range, std::optional<PowerTail> tail)
    : core_(hard_core_radius), pieces_(std::move(pieces)), range_(range), tail_(tail) {}

RadialPotential RadialPotential::hard_disc(double radius) {
  return RadialPotential(radius, {}, radius);
}

RadialPotential RadialPotential::square_well(double height, double range,
                                             double hard_core_radius) {
  return RadialPotential(hard_core_radius,
                         {Piece{hard_core_radius, range, Polynomial{{height}}}}, range);
}

RadialPotential RadialPotential::zero(double range) { return square_well(0.0, range); }

RadialPotential RadialPotential::piecewise_constant(
    double hard_core_radius, const std::vector<std::pair<double, double>>& steps) {
  std::vector<Piece> pieces;
  double lo = hard_core_radius;
  for (const auto& [r_hi, value] : steps) {
    pieces.push_back(Piece{lo, r_hi, Polynomial{{value}}});
    lo = r_hi;
  }
  return RadialPotential(hard_core_radius, std::move(pieces), lo);
}

RadialPotential RadialPotential::with_power_tail(double height, double range,
                                                 double coefficient, double exponent) {
  return RadialPotential(0.0, {Piece{0.0, range, Polynomial{{height}}}}, range,
                         PowerTail{coefficient, exponent});
}

double RadialPotential::operator()(double r) const {
  if (r < core_) return kInf;
  for (const auto& p : pieces_) {
    if (r >= p.r_lo && r <= p.r_hi) return p(r);
  }
  if (r > range_ && tail_) return (*tail_)(r);
  return 0.0;
}

std::vector<double> RadialPotential::breakpoints() const {
  std::vector<double> b;
  b.push_back(core_);
  for (const auto& p : pieces_) {
    b.push_back(p.r_lo);
    b.push_back(p.r_hi);
  }
  b.push_back(range_);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(),
                      [](double x, double y) { return std::abs(x - y) <= kEdgeTol * std::max(1.0, std::abs(y)); }),
          b.end());
  return b;
}

RadialPotential RadialPotential::scaled_values(double lambda) const {
  std::vector<Piece> pieces;
  for (const auto& p : pieces_) {
    Piece q = p;
    if (auto* poly = std::get_if<Polynomial>(&q.profile)) {
      for (double& c : poly->coeffs) c *= lambda;
    } else {
      RadialCallable f = std::get<RadialCallable>(p.profile);
      q.profile = RadialCallable([f, lambda](double r) { return lambda * f(r); });
    }
    pieces.push_back(std::move(q));
  }
  std::optional<PowerTail> tail = tail_;
  if (tail) tail->coefficient *= lambda;
  return RadialPotential(core_, std::move(pieces), range_, tail);
}

RadialPotential RadialPotential::rescaled_lengths(double s) const {
  std::vector<Piece> pieces;
  for (const auto& p : pieces_) {
    Piece q{p.r_lo / s, p.r_hi / s, p.profile};
    if (auto* poly = std::get_if<Polynomial>(&q.profile)) {
      double factor = s * s;
      for (double& c : poly->coeffs) {
        c *= factor;
        factor *= s;
      }
    } else {
      RadialCallable f = std::get<RadialCallable>(p.profile);
      q.profile = RadialCallable([f, s](double r) { return s * s * f(s * r); });
    }
    pieces.push_back(std::move(q));
  }
  std::optional<PowerTail> tail = tail_;
  if (tail) tail->coefficient *= std::pow(s, 2.0 - tail->exponent);
  return RadialPotential(core_ / s, std::move(pieces), range_ / s, tail);
}

RadialPotential RadialPotential::truncated(double cutoff) const {
  std::vector<Piece> pieces;
  for (const auto& p : pieces_) {
    if (p.r_lo >= cutoff) break;
    Piece q = p;
    q.r_hi = std::min(q.r_hi, cutoff);
    pieces.push_back(std::move(q));
  }
  double range = std::min(range_, cutoff);
  if (tail_ && cutoff > range_) {
    const PowerTail t = *tail_;
    pieces.push_back(Piece{range_, cutoff, RadialCallable([t](double r) { return t(r); })});
    range = cutoff;
  }
  return RadialPotential(std::min(core_, cutoff), std::move(pieces), range);
}

std::vector<Violation> validate(const RadialPotential& v) {
  std::vector<Violation> out;
  const double core = v.hard_core_radius();
  const double range = v.range();
  if (!(core >= 0.0) || !std::isfinite(core)) {
    out.push_back({"core_radius", "hard-core radius must be finite and >= 0"});
  }
  if (!(range > 0.0) || !std::isfinite(range)) {
    out.push_back({"range", "range R0 must be finite and > 0"});
  }
  if (core > range) {
    out.push_back({"core_beyond_range", "hard-core radius exceeds R0"});
  }
  const auto& pieces = v.pieces();
  if (pieces.empty() && core < range) {
    out.push_back({"gap", "no profile on " + fmt_interval(core, range)});
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    const double tol = kEdgeTol * std::max(1.0, std::abs(p.r_hi));
    if (!(p.r_lo < p.r_hi)) {
      out.push_back({"empty_piece", "piece " + std::to_string(i) + " has r_lo >= r_hi"});
      continue;
    }
    if (i == 0) {
      if (p.r_lo < core - tol) {
        out.push_back({"piece_inside_core", "piece 0 starts inside the hard core"});
      } else if (p.r_lo > core + tol) {
        out.push_back({"gap", "no profile on " + fmt_interval(core, p.r_lo)});
      }
    } else {
      const Piece& prev = pieces[i - 1];
      if (p.r_lo < prev.r_lo) {
        out.push_back({"unsorted", "piece " + std::to_string(i) + " precedes piece " +
                                       std::to_string(i - 1)});
      } else if (p.r_lo < prev.r_hi - tol) {
        out.push_back({"overlap", "pieces " + std::to_string(i - 1) + " and " +
                                      std::to_string(i) + " overlap on " +
                                      fmt_interval(p.r_lo, std::min(p.r_hi, prev.r_hi))});
      } else if (p.r_lo > prev.r_hi + tol) {
        out.push_back({"gap", "no profile on " + fmt_interval(prev.r_hi, p.r_lo)});
      }
    }
    // Sampled nonnegativity; exact for the constant pieces used in practice.
    constexpr int kSamples = 256;
    for (int k = 0; k <= kSamples; ++k) {
      const double r = p.r_lo + (p.r_hi - p.r_lo) * k / kSamples;
      const double val = p(r);
      if (!std::isfinite(val)) {
        out.push_back({"nonfinite", "piece " + std::to_string(i) + " is not finite at r = " +
                                        std::to_string(r)});
        break;
      }
      if (val < 0.0) {
        out.push_back({"negativity", "negativity at r in " + fmt_interval(p.r_lo, p.r_hi) +
                                         " (v(" + std::to_string(r) + ") = " +
                                         std::to_string(val) + ")"});
        break;
      }
    }
  }
  if (!pieces.empty()) {
    const double last = pieces.back().r_hi;
    const double tol = kEdgeTol * std::max(1.0, std::abs(range));
    if (last > range + tol) {
      out.push_back({"piece_beyond_range", "pieces extend past R0"});
    } else if (last < range - tol) {
      out.push_back({"gap", "no profile on " + fmt_interval(last, range)});
    }
  }
  if (const auto& tail = v.tail()) {
    if (tail->coefficient < 0.0) {
      out.push_back({"negativity", "tail coefficient is negative"});
    }
    if (!(tail->exponent > 2.0)) {
      out.push_back({"tail_moment", "tail r^-p needs p > 2 for a finite moment in 2D"});
    }
  }
  return out;
}

void require_valid(const RadialPotential& v) {
  const auto violations = validate(v);
  if (violations.empty()) return;
  std::string msg = "invalid potential:";
  for (const auto& x : violations) msg += " [" + x.invariant + "] " + x.detail + ";";
  throw DomainError(msg);
}

double radial_moment(const RadialPotential& v, const Weight& weight, double r_lo,
                     double r_hi, double abs_tol) {
  if (!(r_lo >= 0.0) || !(r_lo < r_hi)) {
    throw DomainError("radial_moment requires 0 <= r_lo < r_hi");
  }
  if (weight.kind == Weight::Kind::log_ratio && !(weight.a > 0.0)) {
    throw DomainError("log weight needs a > 0");
  }
  if (v.has_hard_core() && r_lo < v.hard_core_radius()) {
    throw DomainError("hard core inside the integration window: v is +inf there");
  }
  double total = 0.0;
  for (const auto& p : v.pieces()) {
    const double lo = std::max(r_lo, p.r_lo);
    const double hi = std::min(r_hi, p.r_hi);
    if (!(lo < hi)) continue;
    if (const auto* poly = std::get_if<Polynomial>(&p.profile)) {
      for (std::size_t j = 0; j < poly->coeffs.size(); ++j) {
        total += monomial_moment(poly->coeffs[j], static_cast<double>(j), weight, lo, hi);
      }
    } else {
      const auto& f = std::get<RadialCallable>(p.profile);
      total += quad::integrate_or_throw(
          [&](double r) { return f(r) * weight(r) * r; }, lo, hi,
          {abs_tol, 1e-13}, 5000);
    }
  }
  if (const auto& tail = v.tail(); tail && r_hi > v.range()) {
    total += monomial_moment(tail->coefficient, -tail->exponent, weight,
                             std::max(r_lo, v.range()), r_hi);
  }
  return total;
}

double unit_sphere_area(int n) {
  switch (n) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * std::numbers::pi;
    case 3:
      return 4.0 * std::numbers::pi;
    default:
      return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  }
}

double full_space_integral(const RadialPotential& v, int n) {
  if (v.has_hard_core()) {
    throw DomainError("full-space integral of a hard core is infinite");
  }
  const double hi = v.tail() ? kInf : v.range();
  return unit_sphere_area(n) * radial_moment(v, Weight::power(n - 2.0), 0.0, hi);
}

GasParameters::GasParameters(double mu_, double rho_) : mu(mu_), rho(rho_) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be > 0");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("rho must be > 0");
}

}  // namespace bose2d
