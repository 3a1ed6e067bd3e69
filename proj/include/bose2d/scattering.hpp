#pragma once

#include <string>
#include <vector>

#include "bose2d/potentials.hpp"
#include "bose2d/profile.hpp"

namespace bose2d {

struct SolverOptions {
  double rtol = 1e-10;
  /// Series start radius for potentials without a hard core, as a fraction of R0.
  double start_fraction = 1e-6;
  /// |f'(R0)| R0 / f(R0) below this declares a = 0 (n = 2, 3).
  double zero_a_threshold = 1e-13;
  /// Segments whose radii span more than this ratio are integrated in t = ln r.
  double log_span = 1e3;
  /// Lower bound on accepted steps per segment; keeps the interpolant dense.
  int min_steps_per_segment = 64;
};

/// Zero-energy radial solution f0 of -mu (f'' + (n-1) f'/r) + v f / 2 = 0,
/// regular at the origin (or vanishing at the hard core), and the scattering
/// length extracted by matching to the harmonic exterior form at R0.
///
/// Internally the solution is kept unnormalized as F(r): the ODE samples on
/// [0, R0] and the exact harmonic continuation beyond R0. value() and
/// derivative() return f0(r) = F(r) / F(R) for the reference radius R.
class ScatteringSolution {
 public:
  int dimension() const { return n_; }
  /// Scattering length. For n = 2 this underflows to 0 for very weak
  /// potentials; log_range_over_a() stays exact.
  double a() const { return a_; }
  /// ln(R0 / a); +inf when a = 0. Meaningful for n = 2.
  double log_range_over_a() const { return log_r0_over_a_; }
  double range() const { return range_; }
  double core_radius() const { return core_; }
  double reference_radius() const { return reference_R_; }
  /// Same solution normalized at a different reference radius.
  ScatteringSolution with_reference(double R) const;

  /// f0(r), f0'(r) normalized so f0(reference_radius) = 1.
  double value(double r) const;
  double derivative(double r) const;
  /// f0^asymp(r): the exterior harmonic form continued to all r, normalized at R.
  double asymptotic(double r) const;

  /// Unnormalized F and F'. F is zero inside the hard core.
  double raw_value(double r) const;
  double raw_derivative(double r) const;
  /// (F(R0), F'(R0)).
  double raw_value_at_range() const { return f_r0_; }
  double raw_slope_at_range() const { return df_r0_; }

  /// Boundary data (f0(R0), f0'(R0)) in the reference normalization.
  double boundary_value() const { return f_r0_ / raw_value(reference_R_); }
  double boundary_slope() const { return df_r0_ / raw_value(reference_R_); }

  /// ODE interpolant on [core or 0, R0]; empty for a pure hard disc.
  const RadialProfile& interior() const { return interior_; }

  /// (r, f0(r)) on a grid of the ODE nodes plus `exterior_points` points on (R0, R].
  std::vector<std::pair<double, double>> samples(int exterior_points = 64) const;

  const std::string& method() const { return method_; }

 private:
  friend ScatteringSolution solve_radial(const RadialPotential&, double, int,
                                         const SolverOptions&);
  friend ScatteringSolution make_scattering_solution(int n, double core, double range,
                                                     double f_r0, double df_r0,
                                                     RadialProfile interior,
                                                     const SolverOptions& opt);
  int n_ = 2;
  double a_ = 0.0;
  double log_r0_over_a_ = 0.0;
  double range_ = 0.0;
  double core_ = 0.0;
  double reference_R_ = 0.0;
  double f_r0_ = 0.0;
  double df_r0_ = 0.0;
  RadialProfile interior_;
  std::string method_;
};

/// Integrates the radial zero-energy equation out to R0 and extracts a.
/// Only the finite-range part of v is used; tails go through infinite_range_a.
/// The reference radius defaults to 2 R0.
ScatteringSolution solve_radial(const RadialPotential& v, double mu, int n,
                                const SolverOptions& opt = {});

/// Minimum of E_R[phi] over phi(R) = 1 given the scattering length:
/// n = 1: 2 mu / (R - a); n = 2: 2 pi mu / ln(R/a) (0 when a = 0);
/// n >= 3: 2 pi^{n/2} mu a / (Gamma(n/2) (1 - a R^{2-n})).
double min_energy(double a, double R, double mu, int n);
/// n = 2 form taking ln(R/a) directly; 0 when the log is +inf.
double min_energy_2d_from_log(double log_R_over_a, double mu);
/// f0^asymp(r) for a given scattering length (any n >= 1).
double asymptotic_profile(double r, double a, double R, int n);

struct FunctionalMinimum {
  double energy = 0.0;
  std::vector<double> r;
  std::vector<double> phi;
};

/// Direct minimization of the discretized E_R[phi] = omega_n int_0^R
/// (mu phi'^2 + v phi^2 / 2) r^{n-1} dr with phi(R) = 1, using linear finite
/// elements with nodes on every potential breakpoint. Independent of the ODE
/// path; quadratic convergence in the mesh width.
FunctionalMinimum minimize_functional(const RadialPotential& v, double R, double mu,
                                      int n, int grid_size);

struct LemmaReport {
  // (A) f0 >= f0^asymp on (0, R]
  bool bound_holds = false;
  double bound_margin = 0.0;
  // (B) f0 nondecreasing
  bool monotone_holds = false;
  double monotone_margin = 0.0;
  // (C) v >= v_tilde implies f0 <= f0_tilde and a >= a_tilde
  bool comparison_checked = false;
  bool comparison_holds = false;
  double comparison_margin = 0.0;  // min over grid of f0_tilde - f0
  double a = 0.0;
  double a_tilde = 0.0;
  double tolerance = 0.0;
};

/// Parts A and B for v; part C against v_tilde when provided. Throws
/// DomainError when part C is requested but v >= v_tilde fails somewhere.
LemmaReport check_lemma_properties(const RadialPotential& v,
                                   const RadialPotential* v_tilde, double mu, int n,
                                   double R, double tol = 1e-10, int grid = 2000);

struct InequalityReport {
  enum class Status { evaluated, trivial_hard_core, degenerate_zero_a };
  Status status = Status::evaluated;
  int dimension = 2;
  double lhs = 0.0;  // int_{R^n} v
  double rhs = 0.0;
  double slack = 0.0;
  std::string note;
};

/// Bogolubov-type integral inequalities from the trial function phi = 1:
/// n = 2: int v >= 4 pi mu / ln(R0/a); n = 3: int v >= 4 pi^{3/2} mu a / Gamma(3/2);
/// n = 1: int v >= 4 mu / (R0 - a).
InequalityReport integral_inequalities(const RadialPotential& v, double mu, int n);
InequalityReport integral_inequalities(const RadialPotential& v,
                                       const ScatteringSolution& sol, double mu);

struct InfiniteRangeResult {
  std::vector<double> cutoffs;
  std::vector<double> a_values;
  double limit = 0.0;
  bool converged = false;
};

/// a(R_c) for the potential truncated at each cutoff, checked to be
/// nondecreasing, plus an Aitken-accelerated limit. Throws SolverError if the
/// sequence decreases by more than `monotone_tol` (relative).
InfiniteRangeResult infinite_range_a(const RadialPotential& v, double mu, int n,
                                     const std::vector<double>& cutoffs,
                                     double monotone_tol = 1e-9,
                                     const SolverOptions& opt = {});

}  // namespace bose2d
