#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "bose2d/errors.hpp"
#include "bose2d/random_instances.hpp"
#include "bose2d/scattering.hpp"
#include "oracles.hpp"

using namespace bose2d;

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

// ln(R0/a) from the modified Bessel matching I0(k)/(k I1(k)), via the standard library.
double bessel_log(double v0, double R0, double mu) {
  const double k = std::sqrt(v0 / (2 * mu));
  return std::cyl_bessel_i(0.0, k * R0) / (k * R0 * std::cyl_bessel_i(1.0, k * R0));
}

}  // namespace

TEST_CASE("hard disc has a equal to its radius") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sol = solve_radial(RadialPotential::hard_disc(1.0), 1.0, 2);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(rel(sol.a(), 1.0) < 1e-8);
  CHECK(dt < 0.1);
  CHECK(sol.log_range_over_a() == doctest::Approx(0.0).epsilon(1e-12));
  const auto sol3 = solve_radial(RadialPotential::hard_disc(2.0), 1.0, 3);
  CHECK(rel(sol3.a(), 2.0) < 1e-8);
}

TEST_CASE("square well matches frozen oracle") {
  for (const auto& w : oracle::kSquareWells) {
    CAPTURE(w.v0);
    const auto sol = solve_radial(RadialPotential::square_well(w.v0, 1.0), 1.0, 2);
    CHECK(rel(sol.log_range_over_a(), w.log_r0_over_a) < 1e-10);
    CHECK(rel(sol.a(), w.a) < 1e-8);
  }
}

TEST_CASE("square well matches library Bessel functions across mu and R0") {
  for (double v0 : {0.3, 2.0, 30.0}) {
    for (double R0 : {0.5, 2.0}) {
      for (double mu : {0.5, 3.0}) {
        const auto sol = solve_radial(RadialPotential::square_well(v0, R0), mu, 2);
        CHECK(rel(sol.log_range_over_a(), bessel_log(v0, R0, mu)) < 1e-9);
      }
    }
  }
}

TEST_CASE("one and three dimensional square wells") {
  for (double v0 : {0.5, 4.0, 50.0}) {
    const double k = std::sqrt(v0 / 2.0);
    const auto s1 = solve_radial(RadialPotential::square_well(v0, 1.0), 1.0, 1);
    CHECK(rel(s1.a(), 1.0 - 1.0 / (k * std::tanh(k))) < 1e-8);
    const auto s3 = solve_radial(RadialPotential::square_well(v0, 1.0), 1.0, 3);
    CHECK(rel(s3.a(), 1.0 - std::tanh(k) / k) < 1e-8);
  }
}

TEST_CASE("zero potential has a = 0 in two dimensions") {
  const auto sol = solve_radial(RadialPotential::zero(1.0), 1.0, 2);
  CHECK(sol.a() == 0.0);
  CHECK(std::isinf(sol.log_range_over_a()));
  CHECK(min_energy_2d_from_log(sol.log_range_over_a(), 1.0) == 0.0);
}

TEST_CASE("weak coupling keeps the logarithm finite") {
  const auto sol = solve_radial(RadialPotential::square_well(1e-6, 1.0), 1.0, 2);
  CHECK(sol.a() == 0.0);  // underflows
  CHECK(rel(sol.log_range_over_a(), bessel_log(1e-6, 1.0, 1.0)) < 1e-8);
}

TEST_CASE("min energy closed forms") {
  CHECK(min_energy(0.5, 2.0, 1.0, 1) == doctest::Approx(2.0 / 1.5));
  CHECK(min_energy(0.5, 2.0, 1.0, 2) == doctest::Approx(2 * M_PI / std::log(4.0)));
  CHECK(min_energy(0.5, 2.0, 1.0, 3) == doctest::Approx(4 * M_PI * 0.5 / (1 - 0.25)));
  CHECK(min_energy(0.0, 2.0, 1.0, 2) == 0.0);
  CHECK(min_energy_2d_from_log(std::log(4.0), 2.0) == doctest::Approx(4 * M_PI / std::log(4.0)));
  CHECK_THROWS_AS(min_energy(3.0, 2.0, 1.0, 2), DomainError);
}

TEST_CASE("asymptotic profile is the exterior form") {
  CHECK(asymptotic_profile(1.5, 0.5, 3.0, 2) == doctest::Approx(std::log(3.0) / std::log(6.0)));
  CHECK(asymptotic_profile(1.5, 0.5, 3.0, 3) == doctest::Approx((1 - 0.5 / 1.5) / (1 - 0.5 / 3.0)));
  CHECK(asymptotic_profile(1.5, 0.5, 3.0, 1) == doctest::Approx(1.0 / 2.5));
}

TEST_CASE("functional minimum agrees with min energy") {
  const auto v = RadialPotential::piecewise_constant(0.0, {{0.4, 6.0}, {1.0, 1.5}});
  const auto sol = solve_radial(v, 1.0, 2);
  for (double R : {2.0, 10.0}) {
    const auto fm = minimize_functional(v, R, 1.0, 2, 4096);
    const double ref = min_energy_2d_from_log(sol.log_range_over_a() + std::log(R), 1.0);
    CHECK(rel(fm.energy, ref) < 1e-4);
  }
}

TEST_CASE("property: functional error shrinks quadratically") {
  const auto v = RadialPotential::square_well(5.0, 1.0);
  const auto sol = solve_radial(v, 1.0, 2);
  const double ref = min_energy_2d_from_log(sol.log_range_over_a() + std::log(3.0), 1.0);
  const double e1 = rel(minimize_functional(v, 3.0, 1.0, 2, 256).energy, ref);
  const double e2 = rel(minimize_functional(v, 3.0, 1.0, 2, 512).energy, ref);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("property: scaling covariance") {
  for (int i = 0; i < 20; ++i) {
    auto rng = trial_engine(3, i);
    const auto v = random_well(rng);
    const double a1 = solve_radial(v, 1.0, 2).a();
    if (a1 < 1e-200) continue;
    for (double s : {0.5, 2.0}) {
      const double as = solve_radial(v.rescaled_lengths(s), 1.0, 2).a();
      CHECK(rel(as * s, a1) < 1e-8);
    }
  }
}

TEST_CASE("property: a depends on v/mu only") {
  for (int i = 0; i < 20; ++i) {
    auto rng = trial_engine(4, i);
    RandomWellOptions o;
    o.hard_core_probability = 0.3;
    const auto v = random_well(rng, o);
    const auto s1 = solve_radial(v, 1.0, 2);
    const auto s2 = solve_radial(v.scaled_values(2.0), 2.0, 2);
    CHECK(rel(s2.log_range_over_a(), s1.log_range_over_a()) < 1e-10);
  }
}

TEST_CASE("property: nested wells give ordered a") {
  for (int i = 0; i < 50; ++i) {
    auto rng = trial_engine(5, i);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double R0 = 0.5 + 1.5 * u(rng);
    const double h1 = std::exp(std::log(0.05) + u(rng) * std::log(1000.0));
    const double h2 = h1 * (1.0 + 5.0 * u(rng));
    const double a1 = solve_radial(RadialPotential::square_well(h1, R0), 1.0, 2).log_range_over_a();
    const double a2 = solve_radial(RadialPotential::square_well(h2, R0), 1.0, 2).log_range_over_a();
    CHECK(a2 <= a1);  // larger potential, larger a, smaller ln(R0/a)
  }
}

TEST_CASE("property: lemma properties on random wells") {
  for (int i = 0; i < 100; ++i) {
    auto rng = trial_engine(6, i);
    RandomWellOptions o;
    o.hard_core_probability = 0.2;
    const auto v = random_well(rng, o);
    const auto rep = check_lemma_properties(v, nullptr, 1.0, 2, 3.0 * v.range());
    CHECK(rep.bound_holds);
    CHECK(rep.monotone_holds);
    CHECK(rep.monotone_margin >= -1e-10);
  }
}

TEST_CASE("comparison requires ordered potentials") {
  const auto v = RadialPotential::square_well(1.0, 1.0);
  const auto w = RadialPotential::square_well(2.0, 1.0);
  CHECK_THROWS_AS(check_lemma_properties(v, &w, 1.0, 2, 2.0), DomainError);
  const auto rep = check_lemma_properties(w, &v, 1.0, 2, 2.0);
  CHECK(rep.comparison_checked);
  CHECK(rep.comparison_holds);
  CHECK(rep.a >= rep.a_tilde);
}

TEST_CASE("integral inequality") {
  const auto rep = integral_inequalities(RadialPotential::square_well(1.0, 1.0), 1.0, 2);
  CHECK(rep.status == InequalityReport::Status::evaluated);
  CHECK(rep.lhs == doctest::Approx(M_PI));
  CHECK(rep.rhs == doctest::Approx(4 * M_PI / oracle::kSquareWells[1].log_r0_over_a));
  CHECK(rep.slack >= 0.0);
  CHECK(integral_inequalities(RadialPotential::hard_disc(1.0), 1.0, 2).status ==
        InequalityReport::Status::trivial_hard_core);
  CHECK(integral_inequalities(RadialPotential::zero(1.0), 1.0, 2).status ==
        InequalityReport::Status::degenerate_zero_a);
}

TEST_CASE("infinite range: zero tail and power tail") {
  const auto sw = RadialPotential::square_well(3.0, 1.0);
  const auto none = infinite_range_a(sw, 1.0, 2, {1.0, 2.0, 4.0});
  for (double a : none.a_values) CHECK(rel(a, none.a_values.front()) < 1e-10);

  const auto tail = RadialPotential::with_power_tail(3.0, 1.0, 1.0, 4.0);
  // the tail correction decays like ln^2(R_c)/R_c^2, so extrapolate from large cutoffs
  const auto short_run = infinite_range_a(tail, 1.0, 2, {2, 4, 8, 16, 32, 64, 128});
  for (std::size_t i = 1; i < short_run.a_values.size(); ++i) {
    CHECK(short_run.a_values[i] >= short_run.a_values[i - 1]);
  }
  CHECK(short_run.a_values.front() > none.a_values.front());
  const auto r1 = infinite_range_a(tail, 1.0, 2, {500, 1000, 2000, 4000, 8000, 16000});
  const auto r2 = infinite_range_a(tail, 1.0, 2, {1000, 3000, 9000, 27000, 81000});
  CHECK(r1.converged);
  CHECK(r2.converged);
  CHECK(rel(r1.limit, r2.limit) < 1e-6);
  CHECK(r1.limit >= short_run.a_values.back());
}
