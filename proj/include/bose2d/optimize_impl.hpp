#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bose2d::opt {

template <std::size_t D>
SimplexResult<D> nelder_mead(const std::function<double(const std::array<double, D>&)>& f,
                             std::array<double, D> start, std::array<double, D> step,
                             int max_iter, double ftol) {
  using Point = std::array<double, D>;
  std::array<Point, D + 1> pts;
  std::array<double, D + 1> vals;
  pts[0] = start;
  for (std::size_t i = 0; i < D; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += step[i];
  }
  for (std::size_t i = 0; i <= D; ++i) vals[i] = f(pts[i]);

  auto combine = [](const Point& a, const Point& b, double t) {
    Point p;
    for (std::size_t i = 0; i < D; ++i) p[i] = a[i] + t * (b[i] - a[i]);
    return p;
  };

  int it = 0;
  for (; it < max_iter; ++it) {
    std::array<std::size_t, D + 1> order;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return vals[x] < vals[y]; });
    {
      std::array<Point, D + 1> p2;
      std::array<double, D + 1> v2;
      for (std::size_t i = 0; i <= D; ++i) {
        p2[i] = pts[order[i]];
        v2[i] = vals[order[i]];
      }
      pts = p2;
      vals = v2;
    }
    if (std::abs(vals[D] - vals[0]) <= ftol * (std::abs(vals[0]) + std::abs(vals[D])) + 1e-300) break;

    Point centroid{};
    for (std::size_t i = 0; i < D; ++i) {
      for (std::size_t k = 0; k < D; ++k) centroid[k] += pts[i][k] / static_cast<double>(D);
    }
    const Point reflected = combine(centroid, pts[D], -1.0);
    const double fr = f(reflected);
    if (fr < vals[0]) {
      const Point expanded = combine(centroid, pts[D], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[D] = expanded;
        vals[D] = fe;
      } else {
        pts[D] = reflected;
        vals[D] = fr;
      }
    } else if (fr < vals[D - 1]) {
      pts[D] = reflected;
      vals[D] = fr;
    } else {
      const bool outside = fr < vals[D];
      const Point contracted = outside ? combine(centroid, reflected, 0.5)
                                       : combine(centroid, pts[D], 0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, vals[D])) {
        pts[D] = contracted;
        vals[D] = fc;
      } else {
        for (std::size_t i = 1; i <= D; ++i) {
          pts[i] = combine(pts[0], pts[i], 0.5);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  const auto best = static_cast<std::size_t>(
      std::distance(vals.begin(), std::min_element(vals.begin(), vals.end())));
  return {pts[best], vals[best], it};
}

}  // namespace bose2d::opt
