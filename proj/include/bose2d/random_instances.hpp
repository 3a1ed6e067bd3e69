#pragma once

#include <cstdint>
#include <random>

#include "bose2d/potentials.hpp"
#include "bose2d/profile.hpp"

namespace bose2d {

/// Engine for trial `index` of a suite run with `seed`.
std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t index);

struct RandomWellOptions {
  double min_range = 0.5;
  double max_range = 2.0;
  double min_height = 0.05;
  double max_height = 50.0;
  int max_steps = 4;
  double hard_core_probability = 0.0;
};

/// Square well (half the draws) or piecewise-constant well with 2..max_steps
/// steps; heights log-uniform; optional hard core.
RadialPotential random_well(std::mt19937_64& rng, const RandomWellOptions& opt = {});

/// Positive cubic spline on [r_lo, r_hi] with `knots` knots.
RadialProfile random_positive_spline(std::mt19937_64& rng, double r_lo, double r_hi,
                                     int knots = 6);

}  // namespace bose2d
