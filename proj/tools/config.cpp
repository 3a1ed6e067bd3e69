#include "config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bose2d/errors.hpp"

namespace bose2d::cli {
namespace {

using nlohmann::json;

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + s + "' in " + what);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config field '") + key + "': " + e.what());
  }
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + " must be a JSON object");
  for (const auto& [k, _] : j.items()) {
    if (!allowed.count(k)) throw UsageError("unknown config key '" + k + "' in " + where);
  }
}

SlopeWindow window(const json& j, const char* key) {
  const auto v = get<std::vector<double>>(j, key);
  if (v.size() != 2 || !(v[0] <= v[1])) throw UsageError(std::string(key) + " needs [lo, hi]");
  return {v[0], v[1]};
}

}  // namespace

void RunConfig::validate() const {
  if (!(tolerances.ode_rtol > 0.0 && tolerances.quadrature_rtol > 0.0 && tolerances.log_b > 0.0 &&
        tolerances.simplex_iterations > 0)) {
    throw UsageError("tolerances must be positive");
  }
  if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
  if (trials < 0) throw UsageError("trials must be nonnegative");
  if (n_angles < 1) throw UsageError("n_angles must be positive");
  if (fit_window < 2) throw UsageError("fit_window must be at least 2");
  if (!(schedule.epsilon > 0.0 && schedule.ell > 0.0 && schedule.R > 0.0)) {
    throw UsageError("schedule constants must be positive");
  }
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j,
             {"potential", "mu", "rho", "rho_a2", "densities", "outputs", "fit_window",
              "tolerances", "schedule", "seed", "trials", "n_angles", "out", "format",
              "assert_windows"},
             "config");
  RunConfig c;
  if (j.contains("potential")) c.potential = get<std::string>(j, "potential");
  if (j.contains("mu")) c.mu = get<double>(j, "mu");
  if (j.contains("rho")) c.rho = get<double>(j, "rho");
  if (j.contains("rho_a2")) c.rho_a2 = get<double>(j, "rho_a2");
  if (j.contains("densities")) c.densities = get<std::vector<double>>(j, "densities");
  if (j.contains("outputs")) {
    for (const auto& s : get<std::vector<std::string>>(j, "outputs")) {
      try {
        c.outputs.insert(bound_kind_from_string(s));
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }
  }
  if (j.contains("fit_window")) c.fit_window = get<int>(j, "fit_window");
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    check_keys(t, {"ode_rtol", "quadrature_rtol", "log_b", "simplex_iterations"}, "tolerances");
    if (t.contains("ode_rtol")) c.tolerances.ode_rtol = get<double>(t, "ode_rtol");
    if (t.contains("quadrature_rtol")) c.tolerances.quadrature_rtol = get<double>(t, "quadrature_rtol");
    if (t.contains("log_b")) c.tolerances.log_b = get<double>(t, "log_b");
    if (t.contains("simplex_iterations")) {
      c.tolerances.simplex_iterations = get<int>(t, "simplex_iterations");
    }
  }
  if (j.contains("schedule")) {
    const json& s = j["schedule"];
    check_keys(s, {"epsilon", "ell", "R"}, "schedule");
    if (s.contains("epsilon")) c.schedule.epsilon = get<double>(s, "epsilon");
    if (s.contains("ell")) c.schedule.ell = get<double>(s, "ell");
    if (s.contains("R")) c.schedule.R = get<double>(s, "R");
  }
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("trials")) c.trials = get<int>(j, "trials");
  if (j.contains("n_angles")) c.n_angles = get<int>(j, "n_angles");
  if (j.contains("out")) c.out = get<std::string>(j, "out");
  if (j.contains("format")) c.format = get<std::string>(j, "format");
  if (j.contains("assert_windows")) {
    const json& w = j["assert_windows"];
    check_keys(w, {"upper_slope", "lower_slope"}, "assert_windows");
    if (w.contains("upper_slope")) c.upper_slope = window(w, "upper_slope");
    if (w.contains("lower_slope")) c.lower_slope = window(w, "lower_slope");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

RadialPotential parse_potential(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("potential spec needs kind:params, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::vector<std::string> args = split(spec.substr(colon + 1), ',');
  std::vector<double> x;
  RadialPotential v;
  auto numbers = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw UsageError("potential '" + kind + "' takes " + std::to_string(lo) +
                       (hi > lo ? "-" + std::to_string(hi) : "") + " parameters");
    }
    for (const auto& a : args) x.push_back(to_double(a, spec));
  };
  try {
    if (kind == "hard_disc") {
      numbers(1, 1);
      v = RadialPotential::hard_disc(x[0]);
    } else if (kind == "square_well") {
      numbers(2, 3);
      v = RadialPotential::square_well(x[0], x[1], x.size() > 2 ? x[2] : 0.0);
    } else if (kind == "power_tail") {
      numbers(4, 4);
      v = RadialPotential::with_power_tail(x[0], x[1], x[2], x[3]);
    } else if (kind == "zero") {
      numbers(1, 1);
      v = RadialPotential::zero(x[0]);
    } else if (kind == "piecewise") {
      double core = 0.0;
      std::vector<std::pair<double, double>> steps;
      for (const auto& a : args) {
        if (a.rfind("core=", 0) == 0) {
          if (!steps.empty()) throw UsageError("core= must come first in '" + spec + "'");
          core = to_double(a.substr(5), spec);
          continue;
        }
        const std::size_t at = a.find('@');
        if (at == std::string::npos) throw UsageError("piecewise step needs value@radius: '" + a + "'");
        steps.push_back({to_double(a.substr(at + 1), spec), to_double(a.substr(0, at), spec)});
      }
      if (steps.empty()) throw UsageError("piecewise potential needs at least one step");
      v = RadialPotential::piecewise_constant(core, steps);
    } else {
      throw UsageError("unknown potential kind '" + kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw DomainError(e.what());
  }
  require_valid(v);
  return v;
}

}  // namespace bose2d::cli
