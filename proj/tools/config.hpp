#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bose2d/asymptotics.hpp"
#include "bose2d/potentials.hpp"

namespace bose2d::cli {

/// Bad input shape (unknown key, malformed spec); maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double ode_rtol = 1e-10;
  double quadrature_rtol = 1e-13;
  double log_b = 1e-6;
  int simplex_iterations = 200;
};

struct SlopeWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct RunConfig {
  std::string potential = "hard_disc:1";
  double mu = 1.0;
  std::optional<double> rho;
  std::optional<double> rho_a2;
  std::vector<double> densities{1e-10, 1e-20, 1e-40, 1e-80, 1e-160, 1e-300};
  std::set<BoundKind> outputs;
  int fit_window = 3;
  Tolerances tolerances;
  ScheduleConstants schedule;
  std::uint64_t seed = 0;
  int trials = 100;
  int n_angles = 64;
  std::string out;
  std::string format = "json";
  SlopeWindow upper_slope{-1.15, -0.85};
  SlopeWindow lower_slope{-0.30, -0.12};
  /// sweep: exit 1 unless every row is valid and both fits fall in their windows.
  bool assert_mode = false;

  /// Throws UsageError on nonpositive tolerances or unknown format.
  void validate() const;
};

/// Reads a JSON config; unknown keys are a UsageError.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

/// hard_disc:R | square_well:v0,R0[,core] | piecewise:[core=rc,]v@r,... |
/// power_tail:v0,R0,c,p | zero:R. Throws UsageError on malformed specs and
/// DomainError when the potential fails validation.
RadialPotential parse_potential(const std::string& spec);

}  // namespace bose2d::cli
