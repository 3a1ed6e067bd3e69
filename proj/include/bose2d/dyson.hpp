#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bose2d/potentials.hpp"
#include "bose2d/profile.hpp"
#include "bose2d/scattering.hpp"

namespace bose2d {

/// Radial function f(r) with its derivative and the radii where it may be
/// non-smooth. Zero below `support_start` (used for hard cores).
struct RadialFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::vector<double> breakpoints;
  double support_start = 0.0;

  double operator()(double r) const { return r < support_start ? 0.0 : value(r); }
  double d(double r) const { return r < support_start ? 0.0 : derivative(r); }

  static RadialFunction constant(double c);
  /// Profile on [r_min, r_max], held constant beyond r_max and zero below r_min.
  static RadialFunction from_profile(RadialProfile p);
  /// f0(r)/f0(R) for r <= R, 1 beyond.
  static RadialFunction minimizer(const ScatteringSolution& sol, double R);
  /// c * f.
  RadialFunction scaled(double c) const;
};

/// Domain star-shaped about 0 with boundary r = R(theta).
struct StarDomain {
  std::function<double(double)> boundary;

  static StarDomain disc(double radius);
  /// R(theta) > 0 on a sample of `samples` angles.
  bool valid(int samples = 256) const;
};

struct UAdmissibility {
  double moment = 0.0;  // int U ln(r/a) r dr
  bool vanishes_inside_R0 = false;
  bool admissible = false;  // moment <= 1 and U = 0 on [0, R0)
};

UAdmissibility check_U_admissible(const RadialPotential& U, double a, double R0,
                                  double tol = 1e-12);

struct PointwiseReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

/// lhs = 2 pi int_0^R_max (mu f'^2 + v f^2/2) r dr, rhs = E(R) f(R)^2 with
/// E(R) = 2 pi mu / ln(R/a). Needs R0 < R <= R_max. Throws DomainError when f
/// does not vanish inside a hard core.
PointwiseReport check_pointwise(const RadialFunction& f, const RadialPotential& v, double mu,
                                double a, double R, double R_max);

struct AngleSides {
  double theta = 0.0;
  double boundary = 0.0;
  double lhs = 0.0;  // int_0^R(theta) (mu f'^2 + v f^2/2) r dr
  double rhs = 0.0;  // mu int_0^R(theta) U f^2 r dr
  bool trivial = false;  // R(theta) <= R0: rhs = 0
};

/// Per-angle sides of the radial reduction.
AngleSides radial_sides(const RadialFunction& f, const RadialPotential& v,
                        const RadialPotential& U, double mu, double R0, double boundary);

struct DysonReport {
  double min_slack = 0.0;    // min over angles of lhs - rhs
  double total_lhs = 0.0;    // angular quadrature of both sides
  double total_rhs = 0.0;
  double total_slack = 0.0;
  int n_angles = 0;
  int n_trivial = 0;
  double U_moment = 0.0;
  std::vector<AngleSides> angles;
};

using AngularFamily = std::function<RadialFunction(double theta)>;

/// Checks the Dyson inequality on a star domain using the radial derivative
/// only, with equally spaced angles. Throws DomainError when U is not
/// admissible or v has a tail. OpenMP-parallel over angles.
DysonReport check_dyson_inequality(const StarDomain& domain, const AngularFamily& phi,
                                   const RadialPotential& v, const RadialPotential& U, double mu,
                                   double a, int n_angles = 64);
/// Serial reference of the above.
DysonReport check_dyson_inequality_serial(const StarDomain& domain, const AngularFamily& phi,
                                          const RadialPotential& v, const RadialPotential& U,
                                          double mu, double a, int n_angles = 64);

struct GradientComparison {
  double radial_only = 0.0;  // int (mu |d_r phi|^2 + v phi^2/2)
  double full = 0.0;         // int (mu |grad phi|^2 + v phi^2/2); +inf if divergent
};

/// phi(r, theta) = f(r) g(theta) on the disc of radius R_d.
GradientComparison compare_gradients(const RadialFunction& f,
                                     const std::function<double(double)>& g,
                                     const std::function<double(double)>& dg,
                                     const RadialPotential& v, double mu, double R_d,
                                     int n_angles = 64);

struct DysonSuiteReport {
  int n_trials = 0;
  std::uint64_t seed = 0;
  int n_angles = 0;
  double min_slack = 0.0;  // min over trials of the per-angle minimum
  double min_total_slack = 0.0;
  int worst_trial = -1;
  bool all_pass = false;
  double tolerance = 1e-8;
};

/// Random admissible (phi, U, v) triples on random star domains; trial i
/// draws from a generator seeded with (seed, i), so results do not depend
/// on scheduling. OpenMP-parallel over trials.
DysonSuiteReport run_dyson_suite(int trials, std::uint64_t seed, int n_angles = 64,
                                 double tol = 1e-8);
DysonSuiteReport run_dyson_suite_serial(int trials, std::uint64_t seed, int n_angles = 64,
                                        double tol = 1e-8);

}  // namespace bose2d
