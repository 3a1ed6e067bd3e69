#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "bose2d/errors.hpp"

namespace bose2d::ode {

using State = std::array<double, 2>;

struct Options {
  double rtol = 1e-10;
  double atol = 1e-14;
  double max_step = 0.0;  // 0: unbounded
  double initial_step = 0.0;  // 0: |t1 - t0| / 100
  long max_steps = 2'000'000;
};

/// Dormand-Prince 5(4) with local extrapolation and a standard PI-free step
/// controller. Integrates y' = rhs(t, y) from t0 to t1 (t1 > t0) in place.
/// observe(t, y, dydt) is called at t0 and after every accepted step.
template <class Rhs, class Observer>
void integrate_dopri5(Rhs&& rhs, double t0, double t1, State& y, const Options& opt,
                      Observer&& observe) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  auto axpy = [](const State& y0, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y0;
    for (const auto& [c, k] : terms) {
      out[0] += h * c * (*k)[0];
      out[1] += h * c * (*k)[1];
    }
    return out;
  };

  double t = t0;
  const double span = t1 - t0;
  double h = opt.initial_step > 0.0 ? opt.initial_step : span / 100.0;
  if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
  State k1 = rhs(t, y);
  observe(t, y, k1);
  long steps = 0;
  while (t < t1) {
    if (++steps > opt.max_steps) {
      throw SolverError("ODE step budget exhausted at t = " + std::to_string(t));
    }
    bool last = false;
    if (t + h >= t1 || (t1 - (t + h)) < 1e-12 * std::abs(span)) {
      h = t1 - t;
      last = true;
    }
    const State k2 = rhs(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const State k3 = rhs(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = rhs(t + h, y_new);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
      const double scale = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / scale);
    }
    if (!std::isfinite(err) || !std::isfinite(y_new[0]) || !std::isfinite(y_new[1])) {
      if (h < 1e-14 * std::abs(span)) {
        throw SolverError("non-finite ODE state; last good t = " + std::to_string(t));
      }
      h *= 0.25;
      continue;
    }
    if (err <= 1.0) {
      t = last ? t1 : t + h;
      y = y_new;
      k1 = k7;
      observe(t, y, k1);
      if (last) break;
    }
    const double factor =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    if (h < 1e-15 * std::abs(span)) {
      throw SolverError("ODE step size underflow at t = " + std::to_string(t));
    }
  }
}

}  // namespace bose2d::ode
