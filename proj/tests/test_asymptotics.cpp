#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bose2d/asymptotics.hpp"
#include "bose2d/errors.hpp"
#include "bose2d/suites.hpp"

using namespace bose2d;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("bound kind names round-trip") {
  for (auto k : {BoundKind::upper, BoundKind::lower, BoundKind::scheduled_lower, BoundKind::asymptote}) {
    CHECK(bound_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(bound_kind_from_string("middle"), DomainError);
}

TEST_CASE("line fit") {
  const auto f = fit_line({0, 1, 2}, {1, 3, 5});
  CHECK(f.valid);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(!fit_line({1}, {1}).valid);
}

TEST_CASE("sweep spec validation") {
  SweepSpec s;
  s.densities = {0.5};
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.densities = {0.0};
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.densities = {1e-10};
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("default sweep: CSV, ordering, determinism") {
  const SweepSpec spec;
  const auto t = run_sweep(spec);
  const auto u = run_sweep_serial(spec);
  REQUIRE(t.rows.size() == 6);
  for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].rho_a2 < t.rows[i - 1].rho_a2);
  const std::string csv = format_csv(t);
  CHECK(csv == format_csv(u));
  CHECK(csv == format_csv(run_sweep(spec)));
  CHECK(csv.rfind("rho_a2,a,b_opt,upper,eps,ell,R,lower,asymptote,upper_ratio,lower_ratio,flags\n", 0) == 0);
  CHECK(csv.find("nan") == std::string::npos);
  // no feasible lower bound at 1e-10 for the hard disc: NA and a flag
  const auto& first = t.rows.front();
  CHECK(!first.lower);
  CHECK(!first.valid());
  CHECK(csv.find("NA") != std::string::npos);
  CHECK(csv.find("lower_infeasible") != std::string::npos);
}

TEST_CASE("property: upper ratio decreases toward one") {
  const auto t = run_sweep(SweepSpec{});
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& r : t.rows) {
    REQUIRE(r.upper_ratio);
    CHECK(*r.upper_ratio > 1.0);
    CHECK(*r.upper_ratio < prev);
    prev = *r.upper_ratio;
  }
}

TEST_CASE("property: sandwich where both bounds exist") {
  const auto t = run_sweep(SweepSpec{});
  for (const auto& r : t.rows) {
    if (r.lower && r.upper) CHECK(r.lower->energy_per_particle < r.upper->energy_per_particle);
  }
}

TEST_CASE("emit report writes CSV and plot data") {
  const fs::path dir = fs::temp_directory_path() / "bose2d_emit_test";
  fs::create_directories(dir);
  SweepSpec spec;
  spec.densities = {1e-20, 1e-40};
  const auto t = run_sweep(spec);
  const auto only_csv = emit_report(t, (dir / "a.csv").string(), {});
  CHECK(only_csv.plot.empty());
  CHECK(!fs::exists(dir / "a.plot.dat"));
  CHECK(slurp(dir / "a.csv") == format_csv(t));
  const auto both = emit_report(t, (dir / "b.csv").string(), {BoundKind::upper, BoundKind::asymptote});
  CHECK(fs::exists(both.plot));
  CHECK(slurp(both.plot) == format_plot_data(t, {BoundKind::upper, BoundKind::asymptote}));
  CHECK_THROWS_AS(emit_report(t, (dir / "missing" / "x.csv").string(), {}), IoError);
  fs::remove_all(dir);
}

TEST_CASE("lemma and inequality suites") {
  const auto lem = run_lemma_suite(10, 0);
  CHECK(lem.all_pass);
  CHECK(lem.failures == 0);
  CHECK(lem.max_variational_error < 1e-4);
  const auto lem_s = run_lemma_suite_serial(10, 0);
  CHECK(lem.max_variational_error == lem_s.max_variational_error);
  const auto ineq = run_inequality_suite(30, 0);
  CHECK(ineq.all_pass);
  CHECK(ineq.min_slack >= 0.0);
  CHECK(ineq.max_weak_deviation < 0.02);
}
