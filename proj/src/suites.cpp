#include "bose2d/suites.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <vector>

#include "bose2d/random_instances.hpp"
#include "bose2d/scattering.hpp"

namespace bose2d {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LemmaTrial {
  LemmaReport lemma;
  double variational_error = 0.0;
};

LemmaTrial lemma_trial(std::uint64_t seed, int i) {
  std::mt19937_64 rng = trial_engine(seed, static_cast<std::uint64_t>(i));
  RandomWellOptions wo;
  wo.hard_core_probability = 0.2;
  wo.min_height = 0.5;
  const RadialPotential v = random_well(rng, wo);
  const double lambda = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
  const double R = std::uniform_real_distribution<double>(1.2, 10.0)(rng) * v.range();
  const RadialPotential vt = v.has_hard_core() ? RadialPotential::square_well(
                                                     lambda * 0.5, v.range())
                                               : v.scaled_values(lambda);
  LemmaTrial t;
  t.lemma = check_lemma_properties(v, &vt, 1.0, 2, R);
  const ScatteringSolution sol = solve_radial(v, 1.0, 2);
  const double exact = min_energy_2d_from_log(std::log(R / sol.range()) + sol.log_range_over_a(), 1.0);
  const double fem = minimize_functional(v, R, 1.0, 2, 4096).energy;
  t.variational_error = std::abs(fem - exact) / exact;
  return t;
}

LemmaSuiteReport summarize_lemmas(const std::vector<LemmaTrial>& ts, std::uint64_t seed,
                                  double tol) {
  LemmaSuiteReport s;
  s.n_trials = static_cast<int>(ts.size());
  s.seed = seed;
  s.min_bound_margin = s.min_monotone_margin = s.min_comparison_margin = kInf;
  for (int i = 0; i < s.n_trials; ++i) {
    const LemmaTrial& t = ts[i];
    const bool ok = t.lemma.bound_holds && t.lemma.monotone_holds &&
                    (!t.lemma.comparison_checked || t.lemma.comparison_holds) &&
                    t.variational_error <= tol;
    if (!ok) {
      ++s.failures;
      if (s.worst_trial < 0) s.worst_trial = i;
    }
    s.min_bound_margin = std::min(s.min_bound_margin, t.lemma.bound_margin);
    s.min_monotone_margin = std::min(s.min_monotone_margin, t.lemma.monotone_margin);
    s.min_comparison_margin = std::min(s.min_comparison_margin, t.lemma.comparison_margin);
    s.max_variational_error = std::max(s.max_variational_error, t.variational_error);
  }
  if (s.n_trials == 0) s.min_bound_margin = s.min_monotone_margin = s.min_comparison_margin = 0.0;
  s.all_pass = s.failures == 0;
  return s;
}

struct InequalityTrial {
  InequalityReport report;
  double weak_deviation = -1.0;  // < 0 when not sampled
};

InequalityTrial inequality_trial(std::uint64_t seed, int i, double weak_lambda, bool weak) {
  std::mt19937_64 rng = trial_engine(seed, static_cast<std::uint64_t>(i));
  const RadialPotential v = random_well(rng);
  InequalityTrial t;
  t.report = integral_inequalities(v, 1.0, 2);
  if (weak) {
    const RadialPotential w = v.scaled_values(weak_lambda);
    const ScatteringSolution sol = solve_radial(w, 1.0, 2);
    const double product = full_space_integral(w, 2) * sol.log_range_over_a();
    t.weak_deviation = std::abs(product / (4.0 * std::numbers::pi) - 1.0);
  }
  return t;
}

InequalitySuiteReport summarize_inequalities(const std::vector<InequalityTrial>& ts,
                                             std::uint64_t seed, double lambda, double tol) {
  InequalitySuiteReport s;
  s.n_trials = static_cast<int>(ts.size());
  s.seed = seed;
  s.weak_lambda = lambda;
  s.min_slack = s.min_relative_slack = kInf;
  for (int i = 0; i < s.n_trials; ++i) {
    const InequalityReport& r = ts[i].report;
    if (ts[i].weak_deviation >= 0.0) {
      ++s.weak_samples;
      s.max_weak_deviation = std::max(s.max_weak_deviation, ts[i].weak_deviation);
    }
    if (r.status != InequalityReport::Status::evaluated) continue;
    ++s.evaluated;
    if (r.slack < s.min_slack) {
      s.min_slack = r.slack;
      s.worst_trial = i;
    }
    s.min_relative_slack = std::min(s.min_relative_slack, r.slack / r.rhs);
  }
  if (s.evaluated == 0) s.min_slack = s.min_relative_slack = 0.0;
  s.all_pass = s.min_slack >= 0.0 && s.max_weak_deviation <= tol;
  return s;
}

template <class T, class F>
std::vector<T> run_parallel(int n, F&& f) {
  std::vector<T> out(std::max(n, 0));
  std::vector<std::exception_ptr> errors(out.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = f(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

template <class T, class F>
std::vector<T> run_serial(int n, F&& f) {
  std::vector<T> out;
  for (int i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

}  // namespace

LemmaSuiteReport run_lemma_suite(int trials, std::uint64_t seed, double variational_tol) {
  return summarize_lemmas(
      run_parallel<LemmaTrial>(trials, [&](int i) { return lemma_trial(seed, i); }), seed,
      variational_tol);
}

LemmaSuiteReport run_lemma_suite_serial(int trials, std::uint64_t seed, double variational_tol) {
  return summarize_lemmas(
      run_serial<LemmaTrial>(trials, [&](int i) { return lemma_trial(seed, i); }), seed,
      variational_tol);
}

InequalitySuiteReport run_inequality_suite(int trials, std::uint64_t seed, double weak_lambda,
                                           int weak_samples, double weak_tol) {
  return summarize_inequalities(
      run_parallel<InequalityTrial>(
          trials, [&](int i) { return inequality_trial(seed, i, weak_lambda, i < weak_samples); }),
      seed, weak_lambda, weak_tol);
}

InequalitySuiteReport run_inequality_suite_serial(int trials, std::uint64_t seed,
                                                  double weak_lambda, int weak_samples,
                                                  double weak_tol) {
  return summarize_inequalities(
      run_serial<InequalityTrial>(
          trials, [&](int i) { return inequality_trial(seed, i, weak_lambda, i < weak_samples); }),
      seed, weak_lambda, weak_tol);
}

}  // namespace bose2d
