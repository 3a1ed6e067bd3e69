#include "bose2d/random_instances.hpp"

#include <cmath>
#include <vector>

namespace bose2d {

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

}  // namespace

RadialPotential random_well(std::mt19937_64& rng, const RandomWellOptions& opt) {
  const double range = uniform(rng, opt.min_range, opt.max_range);
  const bool core = uniform(rng, 0.0, 1.0) < opt.hard_core_probability;
  const double rc = core ? uniform(rng, 0.1, 0.5) * range : 0.0;
  if (uniform(rng, 0.0, 1.0) < 0.5) {
    return RadialPotential::square_well(log_uniform(rng, opt.min_height, opt.max_height), range, rc);
  }
  const int steps = std::uniform_int_distribution<int>(2, std::max(2, opt.max_steps))(rng);
  std::vector<double> edges;
  for (int i = 0; i < steps - 1; ++i) edges.push_back(uniform(rng, rc, range));
  std::sort(edges.begin(), edges.end());
  edges.push_back(range);
  std::vector<std::pair<double, double>> pieces;
  double prev = rc;
  for (double e : edges) {
    if (e - prev < 1e-3 * range) continue;
    pieces.push_back({e, log_uniform(rng, opt.min_height, opt.max_height)});
    prev = e;
  }
  if (pieces.empty() || pieces.back().first != range) {
    pieces.push_back({range, log_uniform(rng, opt.min_height, opt.max_height)});
  }
  return RadialPotential::piecewise_constant(rc, pieces);
}

RadialProfile random_positive_spline(std::mt19937_64& rng, double r_lo, double r_hi,
                                     int knots) {
  std::vector<double> r(knots), f(knots), df(knots);
  for (int i = 0; i < knots; ++i) {
    r[i] = r_lo + (r_hi - r_lo) * i / (knots - 1);
    f[i] = uniform(rng, 0.2, 2.0);
  }
  // Slopes limited so each cubic piece stays positive.
  const double h = (r_hi - r_lo) / (knots - 1);
  for (int i = 0; i < knots; ++i) {
    const double lim = 1.5 * f[i] / h;
    df[i] = uniform(rng, -lim, lim);
  }
  return RadialProfile::cubic_hermite(r, f, df);
}

}  // namespace bose2d
