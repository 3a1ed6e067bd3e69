#pragma once

#include <cstdint>

namespace bose2d {

struct LemmaSuiteReport {
  int n_trials = 0;
  std::uint64_t seed = 0;
  int failures = 0;
  double min_bound_margin = 0.0;       // f0 - f0^asymp
  double min_monotone_margin = 0.0;    // smallest increment of f0
  double min_comparison_margin = 0.0;  // f0_tilde - f0 for v >= v_tilde
  double max_variational_error = 0.0;  // |E_fem - E(R)| / E(R) at grid 4096
  int worst_trial = -1;
  bool all_pass = false;
};

/// Random wells v (hard core in some draws), v_tilde = lambda v with
/// lambda in (0, 1), R/R0 in [1.2, 10]: minimizer bound, monotonicity,
/// comparison, and the finite-element cross-check of the minimum energy.
LemmaSuiteReport run_lemma_suite(int trials, std::uint64_t seed, double variational_tol = 1e-4);
LemmaSuiteReport run_lemma_suite_serial(int trials, std::uint64_t seed,
                                        double variational_tol = 1e-4);

struct InequalitySuiteReport {
  int n_trials = 0;
  std::uint64_t seed = 0;
  int evaluated = 0;
  double min_slack = 0.0;
  double min_relative_slack = 0.0;  // slack / rhs
  int worst_trial = -1;
  // Weak coupling: (int lambda v) ln(R0/a(lambda)) / (4 pi mu) at lambda.
  double weak_lambda = 1e-4;
  double max_weak_deviation = 0.0;
  int weak_samples = 0;
  bool all_pass = false;
};

/// Bogolubov-type inequality int v >= 4 pi mu / ln(R0/a) on random square and
/// piecewise wells, plus the weak-coupling equality limit on `weak_samples`
/// of them (deviation must stay within `weak_tol`).
InequalitySuiteReport run_inequality_suite(int trials, std::uint64_t seed,
                                           double weak_lambda = 1e-4, int weak_samples = 10,
                                           double weak_tol = 0.02);
InequalitySuiteReport run_inequality_suite_serial(int trials, std::uint64_t seed,
                                                  double weak_lambda = 1e-4,
                                                  int weak_samples = 10, double weak_tol = 0.02);

}  // namespace bose2d
