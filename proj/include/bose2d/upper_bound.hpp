#pragma once

#include <string>

#include "bose2d/potentials.hpp"
#include "bose2d/scattering.hpp"

namespace bose2d {

/// Dyson trial function: f(r) = f0(r)/f0(b) for r <= b and 1 beyond.
class TrialFunction {
 public:
  /// Throws DomainError unless b > R0 and the solution is two-dimensional.
  TrialFunction(ScatteringSolution solution, double b);

  double b() const { return b_; }
  const ScatteringSolution& solution() const { return sol_; }
  double value(double r) const;
  double derivative(double r) const;

 private:
  ScatteringSolution sol_;
  double b_;
};

struct IJK {
  double I = 0.0;  // 2 pi int (1 - f^2) r dr
  double J = 0.0;  // 2 pi mu [f f' r]_0^b (exact boundary term)
  double K = 0.0;  // 2 pi int f f' r dr
};

/// I and K by quadrature of the sampled minimizer (the hard core contributes
/// exactly pi r_c^2 to I); J as the boundary term 2 pi mu b f0'(b)/f0(b).
IJK compute_IJK(const TrialFunction& trial, const RadialPotential& v, double mu);

/// 2 pi int_0^b (mu f'^2 + v f^2 / 2) r dr by quadrature; equals J for the
/// true minimizer by integration by parts.
double J_by_quadrature(const TrialFunction& trial, const RadialPotential& v, double mu);

/// pi b - pi int_0^b f^2 dr, the integrated-by-parts form of K.
double K_by_parts(const TrialFunction& trial, const RadialPotential& v);

struct UpperBoundReport {
  double energy_per_particle = 0.0;
  double b = 0.0;
  double I = 0.0, J = 0.0, K = 0.0;
  double rho_I = 0.0;
  double leading_term = 0.0;  // 4 pi mu rho / |ln(rho a^2)|
  bool near_inadmissible = false;  // rho I > 0.95
  std::string note;
};

/// rho J/(1 - rho I) + (2/3) mu (rho K)^2/(1 - rho I)^2 at the given b.
/// Throws ValidityError when rho I >= 1.
UpperBoundReport bound_at_b(const GasParameters& gas, const RadialPotential& v,
                            const ScatteringSolution& sol, double b);
UpperBoundReport bound_at_b(const GasParameters& gas, const RadialPotential& v, double b);

struct UpperOptions {
  int scan_points = 64;
  double log_b_tolerance = 1e-6;
  double b_max_factor = 10.0;  // b_max = factor * (2 pi rho)^{-1/2}
  double quadrature_rtol = 1e-13;
};

/// Minimizes bound_at_b over b in (R0, b_max] with a log-spaced scan
/// followed by golden-section refinement on ln b.
UpperBoundReport optimize_b(const GasParameters& gas, const RadialPotential& v,
                            const ScatteringSolution& sol, const UpperOptions& opt = {});
UpperBoundReport optimize_b(const GasParameters& gas, const RadialPotential& v,
                            const UpperOptions& opt = {});

/// 4 pi mu rho / |ln(rho a^2)|. Throws DomainError unless rho a^2 < 1.
double asymptotic_upper(const GasParameters& gas, double a);
/// Same, from ln(rho a^2) directly (for rho a^2 below the double range).
double asymptotic_energy(double mu, double rho, double log_rho_a2);

}  // namespace bose2d
