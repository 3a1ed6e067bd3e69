// One PASS/FAIL line per acceptance criterion. `--criterion N` runs one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bose2d/asymptotics.hpp"
#include "bose2d/dyson.hpp"
#include "bose2d/errors.hpp"
#include "bose2d/lower_bound.hpp"
#include "bose2d/random_instances.hpp"
#include "bose2d/scattering.hpp"
#include "bose2d/suites.hpp"
#include "bose2d/upper_bound.hpp"
#include "oracles.hpp"

using namespace bose2d;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

Outcome hard_disc_length() {
  const auto t0 = Clock::now();
  const auto sol = solve_radial(RadialPotential::hard_disc(1.0), 1.0, 2);
  const double dt = seconds_since(t0);
  const double err = rel(sol.a(), 1.0);
  return {err <= 1e-8 && dt < 0.1, "rel err " + fmt("%.2e", err) + ", " + fmt("%.4f", dt) + " s"};
}

Outcome square_well_length() {
  double worst = 0.0;
  for (const auto& w : oracle::kSquareWells) {
    const auto sol = solve_radial(RadialPotential::square_well(w.v0, 1.0), 1.0, 2);
    worst = std::max(worst, rel(sol.a(), w.a));
  }
  return {worst <= 1e-8, "max rel err " + fmt("%.2e", worst)};
}

Outcome variational_cross_check() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    auto rng = trial_engine(2024, i);
    RandomWellOptions o;
    o.hard_core_probability = 0.2;
    const auto v = random_well(rng, o);
    const auto sol = solve_radial(v, 1.0, 2);
    for (double f : {2.0, 10.0}) {
      const double R = f * v.range();
      const double ref = min_energy_2d_from_log(sol.log_range_over_a() + std::log(f), 1.0);
      worst = std::max(worst, rel(minimize_functional(v, R, 1.0, 2, 4096).energy, ref));
    }
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-4 && dt < 30.0, "max rel err " + fmt("%.2e", worst) + ", " + fmt("%.2f", dt) + " s"};
}

Outcome bogolubov_suite() {
  const auto r = run_inequality_suite(100, 0, 1e-4, 10, 0.02);
  return {r.evaluated == 100 && r.min_slack >= 0.0 && r.max_weak_deviation <= 0.02,
          std::to_string(r.evaluated) + " evaluated, min slack " + fmt("%.3e", r.min_slack) +
              ", weak-coupling deviation " + fmt("%.2e", r.max_weak_deviation)};
}

Outcome j_exactness() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    auto rng = trial_engine(505, i);
    RandomWellOptions o;
    o.hard_core_probability = 0.2;
    const auto v = random_well(rng, o);
    const double b = v.range() * std::exp(std::uniform_real_distribution<double>(0.05, 30.0)(rng));
    const TrialFunction t(solve_radial(v, 1.0, 2), b);
    worst = std::max(worst, rel(J_by_quadrature(t, v, 1.0), compute_IJK(t, v, 1.0).J));
  }
  return {worst <= 1e-8, "max rel diff " + fmt("%.2e", worst)};
}

Outcome upper_optimum_location() {
  bool ok = true;
  std::string d;
  for (double r : {1e-20, 1e-40}) {
    const auto rep = optimize_b(GasParameters(1.0, r), RadialPotential::hard_disc(1.0));
    const double x = rep.b * std::sqrt(2 * M_PI * r);
    ok = ok && x >= 0.8 && x <= 1.2;
    d += (d.empty() ? "" : ", ") + std::string("b_opt (2 pi rho)^1/2 = ") + fmt("%.4f", x) + " at " +
         fmt("%.0e", r);
  }
  return {ok, d};
}

Outcome upper_exponent() {
  SweepSpec s;
  s.densities = {1e-20, 1e-40, 1e-80, 1e-160};
  const auto t = run_sweep(s);
  const auto f = fit_upper_exponent(t);
  return {f.valid && std::abs(f.slope + 1.0) <= 0.15, "slope " + fmt("%.4f", f.slope)};
}

Outcome lower_validity_sandwich() {
  const auto t = run_sweep(SweepSpec{});
  bool ok = true;
  std::string d;
  double prev = -1.0;
  for (const auto& r : t.rows) {
    const bool sched_ok = r.scheduled && r.scheduled->flags.all();
    const bool opt_ok = r.lower && r.lower->flags.all();
    const bool sandwich = r.lower && r.upper && r.lower->energy_per_particle <= r.upper->energy_per_particle;
    const double ratio = r.lower_ratio ? *r.lower_ratio : -1.0;
    const bool mono = r.lower_ratio && ratio > prev;
    ok = ok && sched_ok && opt_ok && sandwich && mono;
    prev = ratio;
    if (!(sched_ok && opt_ok && sandwich && mono)) {
      d += fmt("%.0e", r.rho_a2) + ":";
      if (!sched_ok) d += " scheduled(" + (r.scheduled ? r.scheduled->failed : std::string("none")) + ")";
      if (!opt_ok) d += " no optimized bound";
      d += "; ";
    }
  }
  return {ok, d.empty() ? "all densities valid" : d};
}

Outcome lower_exponent() {
  SweepSpec s;
  s.densities = {1e-40, 1e-80, 1e-160, 1e-300};
  const auto t = run_sweep(s);
  const auto f = fit_lower_exponent(t);
  const std::string pts = std::to_string(f.points) + " of 4 densities usable";
  if (!f.valid) return {false, "fit unavailable, " + pts};
  return {f.points == 4 && f.slope >= -0.30 && f.slope <= -0.12, "slope " + fmt("%.4f", f.slope) + ", " + pts};
}

Outcome ur_normalization() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double R0 = std::exp(-3 + 6 * u(rng));
    const double a = R0 * std::exp(-40 * u(rng));
    const double R = R0 * (1.001 + 100 * u(rng));
    const auto s = SoftPotentialUR::make(R0, R, a);
    worst = std::max(worst, std::abs(check_U_admissible(s.potential(), a, R0).moment - 1.0));
  }
  const double nu0 = nu_of_R(1.3, 1.3, 0.2);
  return {worst <= 1e-10 && nu0 == 0.0, "max |moment - 1| " + fmt("%.2e", worst) + ", nu(R0) = " + fmt("%g", nu0)};
}

Outcome dyson_suite() {
  const auto r = run_dyson_suite(100, 0);
  double eq = 0.0;
  for (const auto& v : {RadialPotential::square_well(5.0, 1.0), RadialPotential::hard_disc(1.0)}) {
    const auto sol = solve_radial(v, 1.0, 2);
    const double R = 3.0;
    const auto p = check_pointwise(RadialFunction::minimizer(sol, R), v, 1.0, sol.a(), R, R);
    eq = std::max(eq, std::abs(p.slack));
  }
  return {r.min_slack >= -1e-8 && eq <= 1e-6,
          "min slack " + fmt("%.3e", r.min_slack) + " over " + std::to_string(r.n_trials) +
              " trials, equality case |slack| " + fmt("%.2e", eq)};
}

Outcome k_monotone() {
  // Parameters are drawn so the Temple condition holds up to n = 100; nu is
  // formed from logarithms because a is far below the double range.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int sets = 0, draws = 0;
  bool ok = true;
  while (sets < 20 && draws < 100000) {
    ++draws;
    const double eps = 0.05 + 0.9 * u(rng);
    const double ell = 10 + 1000 * u(rng);
    const double R = ell * (0.01 + 0.48 * u(rng));
    const double R0 = 1.0;
    const double log_R0_a = std::exp(std::log(1e3) + u(rng) * std::log(1e4)) / eps;
    const double nu = 0.25 * (R * R * (2 * (std::log(R / R0) + log_R0_a) - 1) - R0 * R0 * (2 * log_R0_a - 1));
    const double area = M_PI * (R * R - R0 * R0);
    if (!(area / (ell * ell) < 1.0) || !(eps * nu / (ell * ell) - 100.0 * 99.0 * area / (ell * ell) > 0.0)) {
      continue;
    }
    double prev = temple_K(eps, ell, R, nu, area, 2);
    for (int n = 3; n <= 100; ++n) {
      const double K = temple_K(eps, ell, R, nu, area, n);
      ok = ok && K < prev;
      prev = K;
    }
    ++sets;
  }
  return {ok && sets == 20, std::to_string(sets) + " parameter sets, n = 2..100"};
}

Outcome sweep_determinism() {
  const fs::path d = fs::temp_directory_path() / "bose2d_acceptance_sweep";
  fs::remove_all(d);
  fs::create_directories(d);
  std::ofstream(d / "sweep.json") << R"({"potential": "hard_disc:1", "mu": 1, "outputs": ["upper", "lower", "asymptote"]})";
  auto run = [&](const std::string& out) {
    const std::string cmd = std::string("\"") + BOSE2D_CLI + "\" sweep --config \"" + (d / "sweep.json").string() +
                            "\" --out \"" + (d / out).string() + "\" > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  const int c1 = run("one.csv");
  const int c2 = run("two.csv");
  const std::string a = slurp(d / "one.csv"), b = slurp(d / "two.csv");
  const bool same = !a.empty() && a == b;
  fs::remove_all(d);
  return {c1 == 0 && c2 == 0 && same, same ? std::to_string(a.size()) + " identical bytes" : "outputs differ"};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"hard-disc scattering length", hard_disc_length},
      {"square-well scattering length vs Bessel matching", square_well_length},
      {"variational cross-check", variational_cross_check},
      {"integral inequality suite and weak-coupling limit", bogolubov_suite},
      {"J exactness", j_exactness},
      {"upper-bound optimum location", upper_optimum_location},
      {"upper-bound error exponent", upper_exponent},
      {"lower-bound validity and sandwich", lower_validity_sandwich},
      {"lower-bound defect exponent", lower_exponent},
      {"U_R normalization", ur_normalization},
      {"Dyson lemma randomized suite", dyson_suite},
      {"K(n) monotone in n", k_monotone},
      {"sweep determinism", sweep_determinism},
  };
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--criterion") only = std::atoi(argv[i + 1]);
  }
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "criterion must be 1..%zu\n", all.size());
    return 2;
  }
  bool ok = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    ok = ok && o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
