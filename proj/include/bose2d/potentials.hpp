#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bose2d {

/// Polynomial in the absolute radius: sum_j coeffs[j] * r^j.
struct Polynomial {
  std::vector<double> coeffs;

  double operator()(double r) const;
  bool is_zero() const;
};

using RadialCallable = std::function<double(double)>;

/// One radial piece of a potential. Polynomial profiles are integrated in
/// closed form; callables go through adaptive quadrature.
struct Piece {
  double r_lo = 0.0;
  double r_hi = 0.0;
  std::variant<Polynomial, RadialCallable> profile;

  double operator()(double r) const;
  bool is_polynomial() const { return std::holds_alternative<Polynomial>(profile); }
};

/// coefficient / r^exponent, used beyond the range R0.
struct PowerTail {
  double coefficient = 0.0;
  double exponent = 4.0;

  double operator()(double r) const;
};

/// Nonnegative radial two-body potential with an optional hard core and an
/// optional integrable tail. A hard core is stored as a radius and never as
/// a large finite value: v(r) = +inf for r < hard_core_radius().
class RadialPotential {
 public:
  RadialPotential() = default;
  RadialPotential(double hard_core_radius, std::vector<Piece> pieces,
                  double range, std::optional<PowerTail> tail = std::nullopt);

  static RadialPotential hard_disc(double radius);
  static RadialPotential square_well(double height, double range,
                                     double hard_core_radius = 0.0);
  /// v == 0 on [0, range].
  static RadialPotential zero(double range = 1.0);
  /// Constant steps: value steps[i].second on (previous edge, steps[i].first].
  static RadialPotential piecewise_constant(
      double hard_core_radius, const std::vector<std::pair<double, double>>& steps);
  /// Square well of the given height on [0, range] plus coefficient/r^exponent beyond.
  static RadialPotential with_power_tail(double height, double range,
                                         double coefficient, double exponent);

  double hard_core_radius() const { return core_; }
  double range() const { return range_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::optional<PowerTail>& tail() const { return tail_; }
  bool has_hard_core() const { return core_ > 0.0; }

  /// +inf inside the hard core, 0 where no piece or tail applies.
  double operator()(double r) const;

  /// Sorted, deduplicated radii where the profile may be non-smooth:
  /// the core radius, every piece edge and the range.
  std::vector<double> breakpoints() const;

  /// lambda * v.
  RadialPotential scaled_values(double lambda) const;
  /// r -> s^2 v(s r); every length is divided by s.
  RadialPotential rescaled_lengths(double s) const;
  /// Finite-range potential equal to v on [0, cutoff] (the tail becomes a
  /// piece on [range, cutoff]) and zero beyond.
  RadialPotential truncated(double cutoff) const;

 private:
  double core_ = 0.0;
  std::vector<Piece> pieces_;
  double range_ = 0.0;
  std::optional<PowerTail> tail_;
};

struct Violation {
  std::string invariant;
  std::string detail;
};

/// Empty iff every RadialPotential invariant holds.
std::vector<Violation> validate(const RadialPotential& v);
/// Throws DomainError listing the violations, if any.
void require_valid(const RadialPotential& v);

struct Weight {
  enum class Kind { one, log_ratio, power };
  Kind kind = Kind::one;
  double a = 1.0;  // log_ratio: ln(r / a)
  double k = 0.0;  // power: r^k

  static Weight one() { return {}; }
  static Weight log_ratio(double a) { return {Kind::log_ratio, a, 0.0}; }
  static Weight power(double k) { return {Kind::power, 1.0, k}; }
  double operator()(double r) const;
};

/// int_{r_lo}^{r_hi} v(r) weight(r) r dr. Closed form on polynomial pieces,
/// adaptive quadrature elsewhere. r_hi may be +inf when v has no tail (the
/// integrand vanishes beyond the range) or a tail with finite moment.
double radial_moment(const RadialPotential& v, const Weight& weight,
                     double r_lo, double r_hi, double abs_tol = 1e-12);

/// Area integral over R^n of v: omega_n int v r^{n-1} dr, with
/// omega_1 = 2, omega_2 = 2 pi, omega_3 = 4 pi.
double full_space_integral(const RadialPotential& v, int n);

/// Surface measure of the unit sphere in R^n.
double unit_sphere_area(int n);

struct GasParameters {
  double mu = 1.0;   // hbar^2 / 2m
  double rho = 0.0;  // particles per unit area

  GasParameters() = default;
  GasParameters(double mu_, double rho_);
};

}  // namespace bose2d
