#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bose2d/lower_bound.hpp"
#include "bose2d/potentials.hpp"
#include "bose2d/scattering.hpp"
#include "bose2d/upper_bound.hpp"

namespace bose2d {

enum class BoundKind { upper, lower, scheduled_lower, asymptote };

std::string to_string(BoundKind k);
/// Throws DomainError for unknown names.
BoundKind bound_kind_from_string(const std::string& s);

struct SweepSpec {
  std::vector<double> densities{1e-10, 1e-20, 1e-40, 1e-80, 1e-160, 1e-300};  // rho a^2
  RadialPotential potential = RadialPotential::hard_disc(1.0);
  double mu = 1.0;
  /// Empty: every bound is computed and only the CSV is written.
  std::set<BoundKind> outputs;
  /// Exponent fits use this many smallest densities.
  int fit_window = 3;
  UpperOptions upper;
  LowerOptions lower;
  SolverOptions solver;

  /// Throws DomainError unless every density lies in (0, e^-1).
  void validate() const;
  bool wants(BoundKind k) const { return outputs.empty() || outputs.count(k) > 0; }
};

struct SweepRow {
  double rho_a2 = 0.0;
  double log_rho_a2 = 0.0;
  double rho = 0.0;
  double a = 0.0;
  double asymptote = 0.0;
  std::optional<UpperBoundReport> upper;
  std::optional<LowerBoundReport> lower;      // optimized, valid only
  std::optional<LowerBoundReport> scheduled;  // may be invalid, flags set
  std::optional<double> upper_ratio;
  std::optional<double> lower_ratio;
  std::vector<std::string> flags;

  bool valid() const { return flags.empty(); }
};

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
  bool valid = false;
};

/// Least-squares line through (x, y); invalid with fewer than two points.
ExponentFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct SweepTable {
  std::vector<SweepRow> rows;  // descending rho a^2
  ExponentFit upper_fit;       // ln(upper_ratio - 1) vs ln |ln rho a^2|
  ExponentFit lower_fit;       // ln(1 - lower_ratio) vs ln |ln rho a^2|
};

/// ln|ratio - 1| against ln|ln rho a^2| over rows whose rho a^2 is in
/// `densities` (all rows when empty). Rows without the ratio are skipped.
ExponentFit fit_upper_exponent(const SweepTable& t, const std::vector<double>& densities = {});
ExponentFit fit_lower_exponent(const SweepTable& t, const std::vector<double>& densities = {});

/// Evaluates one density; never throws for per-point failures (they become flags).
SweepRow evaluate_density(const SweepSpec& spec, const ScatteringSolution& sol, double rho_a2);

/// Per-density evaluations in parallel; rows in descending rho a^2.
SweepTable run_sweep(const SweepSpec& spec);
/// Serial reference.
SweepTable run_sweep_serial(const SweepSpec& spec);

/// CSV text: rho_a2,a,b_opt,upper,eps,ell,R,lower,asymptote,upper_ratio,lower_ratio,flags.
/// Missing values are NA; flags are ';'-separated, "ok" when none.
std::string format_csv(const SweepTable& t);
/// Plot data: x = |ln rho a^2| followed by the requested ratio series.
std::string format_plot_data(const SweepTable& t, const std::set<BoundKind>& outputs);

struct EmittedFiles {
  std::string csv;
  std::string plot;  // empty when not written
};

/// Writes `csv_path` and, when outputs are requested, csv_path with its
/// extension replaced by ".plot.dat". Throws IoError on failure.
EmittedFiles emit_report(const SweepTable& t, const std::string& csv_path,
                         const std::set<BoundKind>& outputs);

}  // namespace bose2d
