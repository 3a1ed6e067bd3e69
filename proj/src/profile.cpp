#include "bose2d/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bose2d/errors.hpp"

namespace bose2d {
namespace {

double horner(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

double horner_derivative(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) s = s * x + static_cast<double>(k) * c[k];
  return s;
}

void check_sizes(std::size_t n, std::initializer_list<std::size_t> others) {
  for (std::size_t m : others) {
    if (m != n) throw std::invalid_argument("profile sample arrays differ in length");
  }
  if (n < 2) throw std::invalid_argument("profile needs at least two samples");
}

}  // namespace

RadialProfile RadialProfile::quintic_hermite(std::span<const double> r,
                                             std::span<const double> f,
                                             std::span<const double> df,
                                             std::span<const double> d2f) {
  check_sizes(r.size(), {f.size(), df.size(), d2f.size()});
  RadialProfile p;
  p.knots_.push_back(r[0]);
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double h = r[i + 1] - r[i];
    if (h < 0.0) throw std::invalid_argument("profile radii must be nondecreasing");
    if (h == 0.0) continue;
    const double c0 = f[i], c1 = df[i], c2 = 0.5 * d2f[i];
    const double A = f[i + 1] - (c0 + c1 * h + c2 * h * h);
    const double B = df[i + 1] - (c1 + 2.0 * c2 * h);
    const double C = d2f[i + 1] - 2.0 * c2;
    const double h2 = h * h, h3 = h2 * h;
    const double c3 = (20.0 * A - 8.0 * B * h + C * h2) / (2.0 * h3);
    const double c4 = (-30.0 * A + 14.0 * B * h - 2.0 * C * h2) / (2.0 * h3 * h);
    const double c5 = (12.0 * A - 6.0 * B * h + C * h2) / (2.0 * h3 * h2);
    p.append(r[i + 1], {c0, c1, c2, c3, c4, c5});
  }
  return p;
}

RadialProfile RadialProfile::cubic_hermite(std::span<const double> r,
                                           std::span<const double> f,
                                           std::span<const double> df) {
  check_sizes(r.size(), {f.size(), df.size()});
  RadialProfile p;
  p.knots_.push_back(r[0]);
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double h = r[i + 1] - r[i];
    if (h < 0.0) throw std::invalid_argument("profile radii must be nondecreasing");
    if (h == 0.0) continue;
    const double A = f[i + 1] - f[i] - df[i] * h;
    const double B = df[i + 1] - df[i];
    p.append(r[i + 1], {f[i], df[i], (3.0 * A - B * h) / (h * h), (-2.0 * A + B * h) / (h * h * h)});
  }
  return p;
}

RadialProfile RadialProfile::polynomial(std::vector<double> coeffs, double r_lo, double r_hi) {
  // Re-expand around r_lo: p(r_lo + x) = sum_k d_k x^k.
  std::vector<double> local(coeffs.size(), 0.0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    // (r_lo + x)^j = sum_k binom(j,k) r_lo^{j-k} x^k
    double binom = 1.0;
    for (std::size_t k = 0; k <= j; ++k) {
      local[k] += coeffs[j] * binom * std::pow(r_lo, static_cast<double>(j - k));
      binom = binom * static_cast<double>(j - k) / static_cast<double>(k + 1);
    }
  }
  RadialProfile p;
  p.knots_.push_back(r_lo);
  p.append(r_hi, std::move(local));
  return p;
}

void RadialProfile::append(double r_hi, std::vector<double> local_coeffs) {
  if (knots_.empty()) throw std::logic_error("append needs a starting knot");
  if (!(r_hi > knots_.back())) throw std::invalid_argument("append needs r_hi > last knot");
  knots_.push_back(r_hi);
  coeffs_.push_back(std::move(local_coeffs));
}

void RadialProfile::extend(const RadialProfile& next) {
  if (next.empty()) return;
  if (empty()) {
    *this = next;
    return;
  }
  if (std::abs(next.r_min() - r_max()) > 1e-12 * std::max(1.0, std::abs(r_max()))) {
    throw std::invalid_argument("extend: profiles are not contiguous");
  }
  for (std::size_t i = 0; i < next.coeffs_.size(); ++i) {
    knots_.push_back(next.knots_[i + 1]);
    coeffs_.push_back(next.coeffs_[i]);
  }
}

std::size_t RadialProfile::locate(double r) const {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
  const std::ptrdiff_t idx = std::distance(knots_.begin(), it) - 1;
  return static_cast<std::size_t>(
      std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(coeffs_.size()) - 1));
}

double RadialProfile::value(double r) const {
  if (coeffs_.empty()) throw std::logic_error("empty radial profile");
  if (r >= knots_.back()) {
    return horner(coeffs_.back(), knots_.back() - knots_[knots_.size() - 2]);
  }
  const std::size_t i = locate(r);
  return horner(coeffs_[i], r - knots_[i]);
}

double RadialProfile::derivative(double r) const {
  if (coeffs_.empty()) throw std::logic_error("empty radial profile");
  if (r > knots_.back()) return 0.0;
  const std::size_t i = locate(r);
  return horner_derivative(coeffs_[i], r - knots_[i]);
}

RadialProfile RadialProfile::scaled(double c) const {
  RadialProfile p = *this;
  for (auto& cs : p.coeffs_) {
    for (double& x : cs) x *= c;
  }
  return p;
}

}  // namespace bose2d
