#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "bose2d/errors.hpp"
#include "bose2d/parallel.hpp"
#include "cli.hpp"
#include "config.hpp"

namespace fs = std::filesystem;
using bose2d::cli::UsageError;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "bose2d");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = bose2d::cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  return {code, o.str(), e.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("bose2d_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("scattering-length on the hard disc") {
  const auto r = call({"scattering-length", "--potential", "hard_disc:1.0", "--mu", "1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["a"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(j["integral_inequality"]["status"] == "trivial_hard_core");
}

TEST_CASE("weak potential flags underflow and never prints NaN") {
  const auto r = call({"scattering-length", "--potential", "square_well:1e-6,1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("NaN") == std::string::npos);
  CHECK(r.out.find("nan") == std::string::npos);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["a"].get<double>() == 0.0);
  CHECK(j["flags"][0] == "a_underflow");
  CHECK(j["log_R0_over_a"].get<double>() > 100.0);
}

TEST_CASE("upper-bound json and csv") {
  const auto r = call({"upper-bound", "--potential", "hard_disc:1", "--rho-a2", "1e-20"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["upper"]["ratio"].get<double>() > 1.0);
  const auto c = call({"upper-bound", "--potential", "hard_disc:1", "--rho", "1e-20", "--format", "csv"});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("upper.energy_per_particle") != std::string::npos);
}

TEST_CASE("lower-bound: infeasible exits 1 but reports the schedule") {
  const auto r = call({"lower-bound", "--potential", "hard_disc:1", "--rho-a2", "1e-20"});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["optimized"].is_null());
  CHECK(!j["scheduled"]["valid"].get<bool>());
  const auto ok = call({"lower-bound", "--potential", "hard_disc:1", "--rho-a2", "1e-300"});
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["optimized"]["valid"].get<bool>());
}

TEST_CASE("exit codes") {
  CHECK(call({"scattering-length", "--bogus"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"scattering-length", "--potential", "nope:1"}).code == 2);
  CHECK(call({"scattering-length", "--potential", "square_well:-1,1"}).code == 1);
  CHECK(call({"upper-bound", "--potential", "hard_disc:1"}).code == 2);
  CHECK(call({"upper-bound", "--potential", "hard_disc:1", "--rho", "5"}).code == 1);
  CHECK(call({"scattering-length", "--format", "xml"}).code == 2);
  CHECK(call({"scattering-length", "--config", "/nonexistent.json"}).code == 2);
}

TEST_CASE("potential spec parsing") {
  using bose2d::cli::parse_potential;
  CHECK(parse_potential("square_well:2,1.5").range() == 1.5);
  CHECK(parse_potential("square_well:2,1.5,0.5").hard_core_radius() == 0.5);
  const auto pw = parse_potential("piecewise:core=0.2,5@0.5,1@1");
  CHECK(pw.hard_core_radius() == 0.2);
  CHECK(pw(0.4) == 5.0);
  CHECK(pw(0.8) == 1.0);
  CHECK(parse_potential("power_tail:1,1,2,4").tail().has_value());
  CHECK_THROWS_AS(parse_potential("piecewise:5"), UsageError);
  CHECK_THROWS_AS(parse_potential("hard_disc:x"), UsageError);
  CHECK_THROWS_AS(parse_potential("hard_disc"), UsageError);
  CHECK_THROWS_AS(parse_potential("square_well:1"), UsageError);
  CHECK_THROWS_AS(parse_potential("hard_disc:-1"), bose2d::DomainError);
}

TEST_CASE("config parsing and flag override") {
  using bose2d::cli::parse_config;
  CHECK_THROWS_AS(parse_config(R"({"colour": 1})"), UsageError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"ode": 1}})"), UsageError);
  CHECK_THROWS_AS(parse_config("{"), UsageError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"ode_rtol": -1}})").validate(), UsageError);
  const auto c = parse_config(R"({"potential": "square_well:4,1", "seed": 7, "outputs": ["upper"]})");
  CHECK(c.potential == "square_well:4,1");
  CHECK(c.seed == 7);
  CHECK(c.outputs.size() == 1);

  const fs::path d = scratch_dir("override");
  std::ofstream(d / "c.json") << R"({"potential": "square_well:4,1", "mu": 1})";
  const auto from_cfg = call({"scattering-length", "--config", (d / "c.json").string()});
  const auto overridden =
      call({"scattering-length", "--config", (d / "c.json").string(), "--potential", "hard_disc:1"});
  REQUIRE(from_cfg.code == 0);
  REQUIRE(overridden.code == 0);
  CHECK(nlohmann::json::parse(from_cfg.out)["a"].get<double>() ==
        doctest::Approx(0.29186468173140974427).epsilon(1e-8));
  CHECK(nlohmann::json::parse(overridden.out)["a"].get<double>() == doctest::Approx(1.0));
  fs::remove_all(d);
}

TEST_CASE("sweep writes CSV and plot data, byte-identical across runs") {
  const fs::path d = scratch_dir("sweep");
  std::ofstream(d / "sweep.json")
      << R"({"densities": [1e-20, 1e-40, 1e-80], "outputs": ["upper", "asymptote"], "out": ")"
      << (d / "one.csv").string() << "\"}";
  const auto r1 = call({"sweep", "--config", (d / "sweep.json").string()});
  const auto r2 = call({"sweep", "--config", (d / "sweep.json").string(), "--out", (d / "two.csv").string()});
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(fs::exists(d / "one.plot.dat"));
  CHECK(slurp(d / "one.csv") == slurp(d / "two.csv"));
  CHECK(slurp(d / "one.plot.dat") == slurp(d / "two.plot.dat"));
  CHECK(r1.out.find("NaN") == std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("sweep --assert fails when the lower fit is unavailable") {
  const auto r = call({"sweep", "--rho-a2", "1e-20", "--assert", "--format", "csv"});
  CHECK(r.code == 1);
}

TEST_CASE("verify subcommands") {
  const auto d = call({"verify", "dyson", "--trials", "10", "--seed", "0"});
  CHECK(d.code == 0);
  const auto j = nlohmann::json::parse(d.out);
  for (const char* k : {"min_slack", "total_slack", "n_angles", "n_trials", "seed"}) CHECK(j.contains(k));
  CHECK(call({"verify", "lemmas", "--trials", "5", "--seed", "0"}).code == 0);
  CHECK(call({"verify", "inequalities", "--trials", "20", "--seed", "1"}).code == 0);
  CHECK(call({"verify"}).code == 2);
}

TEST_CASE("thread cap from the environment") {
  ::setenv("BOSE2D_THREADS", "2", 1);
  CHECK(bose2d::thread_cap_from_env() == 2);
  ::setenv("BOSE2D_THREADS", "zero", 1);
  CHECK(bose2d::thread_cap_from_env() == 0);
  ::setenv("BOSE2D_THREADS", "1", 1);
  const auto r = call({"verify", "dyson", "--trials", "5"});
  CHECK(r.code == 0);
  ::unsetenv("BOSE2D_THREADS");
  const auto s = call({"verify", "dyson", "--trials", "5"});
  CHECK(r.out == s.out);
}
