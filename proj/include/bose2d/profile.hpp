#pragma once

#include <span>
#include <vector>

namespace bose2d {

/// Piecewise polynomial radial profile f(r). Each interval [knots[i],
/// knots[i+1]] carries its own coefficients in the local variable
/// x = r - knots[i]. Beyond the last knot the profile is held constant.
class RadialProfile {
 public:
  RadialProfile() = default;

  /// Quintic Hermite interpolation through (r, f, f', f'') samples.
  /// Repeated radii are allowed and start a new interval (jumps in f'').
  static RadialProfile quintic_hermite(std::span<const double> r,
                                       std::span<const double> f,
                                       std::span<const double> df,
                                       std::span<const double> d2f);
  /// Cubic Hermite interpolation through (r, f, f') samples.
  static RadialProfile cubic_hermite(std::span<const double> r,
                                     std::span<const double> f,
                                     std::span<const double> df);
  /// Single polynomial in the absolute radius on [r_lo, r_hi].
  static RadialProfile polynomial(std::vector<double> coeffs, double r_lo,
                                  double r_hi);

  /// Appends an interval [back(), r_hi] with local-variable coefficients.
  void append(double r_hi, std::vector<double> local_coeffs);
  /// Appends every interval of `next`, which must start at r_max().
  void extend(const RadialProfile& next);

  double value(double r) const;
  double derivative(double r) const;

  double r_min() const { return knots_.empty() ? 0.0 : knots_.front(); }
  double r_max() const { return knots_.empty() ? 0.0 : knots_.back(); }
  /// Interval edges; quadrature should split at these.
  const std::vector<double>& knots() const { return knots_; }
  bool empty() const { return coeffs_.empty(); }

  /// c * f.
  RadialProfile scaled(double c) const;

 private:
  std::size_t locate(double r) const;

  std::vector<double> knots_;
  std::vector<std::vector<double>> coeffs_;
};

}  // namespace bose2d
