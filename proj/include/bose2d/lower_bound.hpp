#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bose2d/potentials.hpp"

namespace bose2d {

/// Annular soft potential U_R = 1/nu on (R0, R), zero elsewhere, normalized
/// so that int U_R(r) ln(r/a) r dr = 1.
struct SoftPotentialUR {
  double R0 = 0.0;
  double R = 0.0;
  double a = 0.0;
  double nu = 0.0;
  double area = 0.0;  // pi (R^2 - R0^2)

  /// Throws DomainError unless R >= R0 >= a > 0.
  static SoftPotentialUR make(double R0, double R, double a);
  /// U_R as a potential on [0, R]: zero on [0, R0], 1/nu on (R0, R].
  RadialPotential potential() const;
};

/// nu(R) = [R^2 (ln(R^2/a^2) - 1) - R0^2 (ln(R0^2/a^2) - 1)] / 4.
/// Throws DomainError for a > R0, R < R0 or nonpositive lengths.
double nu_of_R(double R0, double R, double a);

struct WExpectation {
  double lower = 0.0;
  double upper = 0.0;
  double second_moment_bound = 0.0;
};

/// n(n-1) Q/(nu (1 + (n-1) Q)) <= <W_R>_0 <= n(n-1) Q/nu with Q = A/ell^2,
/// and <W_R^2>_0 <= (n/nu) <W_R>_0 (bounded with the upper value).
/// Throws DomainError when Q >= 1.
WExpectation W_expectation_bounds(int n_cell, const SoftPotentialUR& soft, double ell);

struct LowerBoundParams {
  double epsilon = 0.0;
  double ell = 0.0;
  double R = 0.0;
  int n_cell = 2;
  double Q = 0.0;  // A(R)/ell^2
};

struct TempleResult {
  double K = 0.0;
  double cell_bound = 0.0;   // mu n(n-1)/ell^2 (A/nu) K(n)
  double denominator = 0.0;  // eps nu/ell^2 - n(n-1) Q
};

/// K(n) = (1-eps)(1-2R/ell)^2/(1+(n-1)Q) * (1 - n/(eps nu/ell^2 - n(n-1)Q)).
/// Throws ValidityError (Temple condition) when the denominator is not positive.
double temple_K(double epsilon, double ell, double R, double nu, double area, int n);
TempleResult temple_cell_bound(const LowerBoundParams& params, const SoftPotentialUR& soft,
                               double mu);

struct ConstraintFlags {
  bool epsilon_in_unit_interval = false;
  bool R_above_R0 = false;
  bool two_R_below_ell = false;
  bool rho_ell2_above_one = false;
  bool covered_fraction_below_one = false;
  bool temple_condition = false;
  bool ratio_within_budget = false;  // leading_ratio <= 1.05

  bool all() const;
  std::vector<std::pair<std::string, bool>> named() const;
};

struct ErrorTerms {
  double epsilon = 0.0;
  double inv_rho_ell2 = 0.0;
  double R_over_ell = 0.0;
  double rho_R2 = 0.0;
  double temple_ratio = 0.0;  // rho ell^4 / (eps R^2 ln(R^2/a^2))
};

struct LowerBoundReport {
  bool valid = false;
  double energy_per_particle = 0.0;  // 0 when invalid
  LowerBoundParams params;
  double K_value = 0.0;
  double leading_ratio = 0.0;  // bound / (4 pi mu rho / |ln rho a^2|)
  double log_rho_a2 = 0.0;
  ConstraintFlags flags;
  ErrorTerms errors;
  std::string failed;  // first failed constraint, empty when valid
};

/// Length data of the potential: R0 and ln(R0/a) (exact even when a underflows).
struct ScatteringScale {
  double R0 = 1.0;
  double log_R0_over_a = 0.0;

  static ScatteringScale from_a(double a, double R0);
  double log_rho_a2(double rho) const;
};

/// mu rho (A/nu)(1 - 1/(rho ell^2)) K(n_cell), n_cell = max(2, ceil(4 rho ell^2)).
/// Evaluated in lengths scaled by rho^{1/2}, so it stays finite down to
/// rho a^2 ~ 1e-300. Invalid parameters give an invalid report, not a throw.
LowerBoundReport assemble_lower_bound(const GasParameters& gas, const ScatteringScale& scale,
                                      double epsilon, double ell, double R);
LowerBoundReport assemble_lower_bound(const GasParameters& gas, double a, double R0,
                                      const LowerBoundParams& params);

struct ScheduleConstants {
  double epsilon = 1.0;
  double ell = 1.0;
  double R = 1.0;
};

struct ScheduleValues {
  double epsilon = 0.0;
  double ell = 0.0;
  double R = 0.0;
};

/// eps = c_eps L^{-1/5}, ell = c_ell rho^{-1/2} L^{1/10}, R = c_R rho^{-1/2} L^{-1/10},
/// L = |ln rho a^2|. No constraint checks. Throws DomainError unless rho a^2 < e^{-1}.
ScheduleValues schedule_values(double rho, double log_rho_a2, const ScheduleConstants& c = {});

/// The schedule as LowerBoundParams. Throws DomainError naming the binding
/// constraint when 2R >= ell or R <= R0.
LowerBoundParams schedule_parameters(const GasParameters& gas, const ScatteringScale& scale,
                                     const ScheduleConstants& c = {});

struct TempleMagnitudes {
  double lhs = 0.0;  // eps ln(R^2/a^2) / ell^2   (rho = 1 units)
  double rhs = 0.0;  // rho^2 ell^4
  double lhs_over_L35 = 0.0;
  double rhs_over_L25 = 0.0;
};

/// Both sides of the schedule's Temple-size comparison, with the claimed
/// |ln rho a^2|^{3/5} and |ln rho a^2|^{2/5} growth divided out.
TempleMagnitudes schedule_magnitudes(const GasParameters& gas, const ScatteringScale& scale,
                                     const ScheduleConstants& c = {});

struct LowerOptions {
  ScheduleConstants schedule;
  int max_iterations = 200;
  double penalty = 1e10;
};

/// Maximizes assemble_lower_bound over (eps, ell, R): Nelder-Mead in
/// (logit eps, ln ell, ln R) from the schedule and from the best points of a
/// fixed coarse grid. Never returns less than a valid scheduled report.
/// Throws ValidityError when no feasible point is found.
LowerBoundReport optimize_lower_bound(const GasParameters& gas, const ScatteringScale& scale,
                                      const LowerOptions& opt = {});

/// Scheduled report (possibly invalid, flags set) without throwing.
LowerBoundReport scheduled_lower_bound(const GasParameters& gas, const ScatteringScale& scale,
                                       const ScheduleConstants& c = {});

}  // namespace bose2d
