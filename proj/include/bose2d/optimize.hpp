#pragma once

#include <array>
#include <functional>
#include <vector>

namespace bose2d::opt {

struct ScalarMin {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for a minimum of f on [lo, hi]; stops when the
/// bracket is narrower than tol.
ScalarMin golden_section(const std::function<double(double)>& f, double lo, double hi,
                         double tol, int max_iter = 200);

template <std::size_t D>
struct SimplexResult {
  std::array<double, D> x{};
  double value = 0.0;
  int iterations = 0;
};

/// Nelder-Mead minimization from `start` with per-coordinate initial steps.
/// Deterministic: the initial simplex is start + step_i e_i.
template <std::size_t D>
SimplexResult<D> nelder_mead(const std::function<double(const std::array<double, D>&)>& f,
                             std::array<double, D> start, std::array<double, D> step,
                             int max_iter = 200, double ftol = 1e-12);

}  // namespace bose2d::opt

#include "bose2d/optimize_impl.hpp"
