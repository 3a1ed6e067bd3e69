#include <doctest.h>

#include <cmath>
#include <random>

#include "bose2d/asymptotics.hpp"
#include "bose2d/errors.hpp"
#include "bose2d/lower_bound.hpp"
#include "bose2d/random_instances.hpp"
#include "oracles.hpp"

using namespace bose2d;

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

TEST_CASE("nu closed form and edge cases") {
  CHECK(rel(nu_of_R(1.0, 2.0, 0.5), oracle::kNu) < 1e-14);
  CHECK(nu_of_R(1.0, 1.0, 0.5) == 0.0);
  CHECK(nu_of_R(1.0, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(nu_of_R(1.0, 2.0, 1.5), DomainError);
  CHECK_THROWS_AS(nu_of_R(1.0, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(nu_of_R(1.0, 2.0, 0.0), DomainError);
}

TEST_CASE("property: U_R is normalized against ln(r/a)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double R0 = std::exp(-3 + 5 * u(rng));
    const double a = R0 * std::exp(-30 * u(rng));
    const double R = R0 * (1.01 + 50 * u(rng));
    const auto s = SoftPotentialUR::make(R0, R, a);
    const double m = radial_moment(s.potential(), Weight::log_ratio(a), 0.0, R);
    CHECK(std::abs(m - 1.0) < 1e-10);
  }
}

TEST_CASE("A/nu approaches its limit with a quadratic deviation") {
  // deviation ~ (R0/R)^2 ln(R/R0); divide the log out and fit the power
  const double R = 1.0, a = 1e-30;
  std::vector<double> x, y;
  for (double r0 : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const auto s = SoftPotentialUR::make(r0, R, a);
    const double limit = 4 * M_PI / (std::log(R * R / (a * a)) - 1.0);
    const double dev = std::abs(s.area / s.nu - limit) / limit;
    x.push_back(std::log(r0 / R));
    y.push_back(std::log(dev / std::log(R / r0)));
  }
  const auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("W expectation arithmetic") {
  SoftPotentialUR s;
  s.nu = 1.0;
  s.area = 0.1;
  const auto w = W_expectation_bounds(4, s, 1.0);
  CHECK(w.upper == doctest::Approx(1.2));
  CHECK(w.lower == doctest::Approx(1.2 / 1.3));
  CHECK(w.second_moment_bound == doctest::Approx(4 * 1.2));
  CHECK(W_expectation_bounds(1, s, 1.0).upper == 0.0);
  s.area = 2.0;
  CHECK_THROWS_AS(W_expectation_bounds(4, s, 1.0), DomainError);
}

TEST_CASE("Temple instance matches oracle") {
  const auto s = SoftPotentialUR::make(1.0, 1.5, 1e-60);
  CHECK(rel(s.nu, oracle::kTempleNu) < 1e-13);
  LowerBoundParams p;
  p.epsilon = 0.5;
  p.ell = 4.0;
  p.R = 1.5;
  p.n_cell = 2;
  const auto t = temple_cell_bound(p, s, 1.0);
  CHECK(rel(s.area / 16.0, oracle::kTempleQ) < 1e-13);
  CHECK(rel(t.denominator, oracle::kTempleDenominator) < 1e-12);
  CHECK(rel(t.K, oracle::kTempleK) < 1e-11);
  CHECK(rel(t.cell_bound, oracle::kTempleCell) < 1e-11);
}

TEST_CASE("Temple condition failure names the condition") {
  const auto s = SoftPotentialUR::make(1.0, 2.0, 0.5);
  try {
    temple_K(0.2, 10.0, 2.0, s.nu, s.area, 8);
    FAIL("expected ValidityError");
  } catch (const ValidityError& e) {
    CHECK(std::string(e.what()).find("Temple") != std::string::npos);
  }
}

TEST_CASE("K limits") {
  const auto s = SoftPotentialUR::make(1.0, 1.5, 1e-60);
  CHECK(temple_K(1.0 - 1e-12, 4.0, 1.5, s.nu, s.area, 2) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(temple_K(0.5, 3.0, 1.5, s.nu, s.area, 2) == 0.0);
}

TEST_CASE("property: K decreasing in n") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 20) {
    const double eps = 0.05 + 0.9 * u(rng);
    const double ell = 20 + 200 * u(rng);
    const double R = ell * (0.01 + 0.2 * u(rng));
    const auto s = SoftPotentialUR::make(1.0, R, std::exp(-500 * u(rng) - 1));
    double prev = std::numeric_limits<double>::infinity();
    int n = 2;
    for (; n <= 100; ++n) {
      double K;
      try {
        K = temple_K(eps, ell, R, s.nu, s.area, n);
      } catch (const ValidityError&) {
        break;
      }
      CHECK(K < prev);
      prev = K;
    }
    if (n > 3) ++checked;
  }
}

TEST_CASE("assembled bound at 1e-300 matches oracle") {
  const GasParameters gas(1.0, 1e-300);
  const auto scale = ScatteringScale::from_a(1.0, 1.0);
  const double sr = std::sqrt(gas.rho);
  const auto rep = assemble_lower_bound(gas, scale, 0.81, 1.107 / sr, 0.338 / sr);
  REQUIRE(rep.valid);
  CHECK(rep.params.n_cell == oracle::kAssembledN);
  CHECK(rel(rep.K_value, oracle::kAssembledK) < 1e-10);
  CHECK(rel(rep.energy_per_particle, oracle::kAssembledEnergy) < 1e-10);
  CHECK(rel(rep.leading_ratio, oracle::kAssembledRatio) < 1e-10);
}

TEST_CASE("invalid assemblies report the failed constraint and zero energy") {
  const GasParameters gas(1.0, 1e-20);
  const auto scale = ScatteringScale::from_a(1.0, 1.0);
  const double sr = std::sqrt(gas.rho);
  const auto unit_cell = assemble_lower_bound(gas, scale, 0.5, 1.0 / sr, 0.1 / sr);
  CHECK(!unit_cell.valid);
  CHECK(unit_cell.failed == "rho_ell2_above_one");
  CHECK(unit_cell.energy_per_particle == 0.0);
  const auto wide = assemble_lower_bound(gas, scale, 0.5, 2.0 / sr, 1.5 / sr);
  CHECK(wide.failed == "two_R_below_ell");
  const auto eps = assemble_lower_bound(gas, scale, 1.5, 2.0 / sr, 0.1 / sr);
  CHECK(eps.failed == "epsilon_in_unit_interval");
}

TEST_CASE("schedule at rho a^2 = e^-32") {
  const auto s = schedule_values(1.0, -32.0);
  CHECK(s.epsilon == doctest::Approx(std::pow(32.0, -0.2)));
  CHECK(s.ell == doctest::Approx(std::pow(32.0, 0.1)));
  CHECK(s.R == doctest::Approx(std::pow(32.0, -0.1)));
  CHECK_THROWS_AS(schedule_values(1.0, -0.5), DomainError);
}

TEST_CASE("schedule equalizes the first three error terms") {
  for (double r : {1e-10, 1e-40, 1e-300}) {
    const auto rep = scheduled_lower_bound(GasParameters(1.0, r), ScatteringScale::from_a(1.0, 1.0));
    CHECK(rep.errors.epsilon == doctest::Approx(rep.errors.inv_rho_ell2).epsilon(1e-12));
    CHECK(rep.errors.epsilon == doctest::Approx(rep.errors.R_over_ell).epsilon(1e-12));
  }
}

TEST_CASE("schedule magnitudes grow as claimed") {
  const auto scale = ScatteringScale::from_a(1.0, 1.0);
  const auto m1 = schedule_magnitudes(GasParameters(1.0, 1e-80), scale);
  const auto m2 = schedule_magnitudes(GasParameters(1.0, 1e-300), scale);
  CHECK(m2.rhs_over_L25 == doctest::Approx(m1.rhs_over_L25));
  CHECK(m2.lhs_over_L35 / m1.lhs_over_L35 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("schedule parameters report the binding constraint") {
  ScheduleConstants c;
  c.R = 10.0;
  CHECK_THROWS_AS(schedule_parameters(GasParameters(1.0, 1e-10), ScatteringScale::from_a(1.0, 1.0), c),
                  DomainError);
}

TEST_CASE("optimizer is never below the schedule and throws when infeasible") {
  const auto scale = ScatteringScale::from_a(1.0, 1.0);
  for (double r : {1e-160, 1e-300}) {
    const GasParameters gas(1.0, r);
    const auto best = optimize_lower_bound(gas, scale);
    CHECK(best.valid);
    const auto sched = scheduled_lower_bound(gas, scale);
    if (sched.valid) CHECK(best.energy_per_particle >= sched.energy_per_particle);
    CHECK(best.leading_ratio <= 1.0);
  }
  CHECK_THROWS_AS(optimize_lower_bound(GasParameters(1.0, 1e-10), scale), ValidityError);
  CHECK_THROWS_AS(optimize_lower_bound(GasParameters(1.0, 0.5), scale), DomainError);
}

TEST_CASE("bound scales linearly in mu") {
  const auto scale = ScatteringScale::from_a(1.0, 1.0);
  const double sr = std::sqrt(1e-300);
  const auto r1 = assemble_lower_bound(GasParameters(1.0, 1e-300), scale, 0.81, 1.107 / sr, 0.338 / sr);
  const auto r2 = assemble_lower_bound(GasParameters(2.0, 1e-300), scale, 0.81, 1.107 / sr, 0.338 / sr);
  CHECK(rel(r2.energy_per_particle, 2 * r1.energy_per_particle) < 1e-14);
}
