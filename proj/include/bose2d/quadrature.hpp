#pragma once

#include <functional>

namespace bose2d::quad {

struct Tolerance {
  double absolute = 1e-12;
  double relative = 1e-12;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// The interval with the largest error estimate is bisected until the total
/// estimate drops below max(absolute, relative * |value|) or max_intervals is
/// reached. Finite intervals only; map infinite ranges before calling.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 Tolerance tol = {}, int max_intervals = 2000);

/// Same as integrate() but throws SolverError when the tolerance is missed.
double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, Tolerance tol = {},
                          int max_intervals = 2000);

/// 8-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 15.
template <class F>
double gauss_legendre8(F&& f, double a, double b) {
  constexpr double x[4] = {0.1834346424956498049394761, 0.5255324099163289858177390,
                           0.7966664774136267395915539, 0.9602898564975362316835609};
  constexpr double w[4] = {0.3626837833783619829651504, 0.3137066458778872873379622,
                           0.2223810344533744705443560, 0.1012285362903762591525314};
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    s += w[i] * (f(c - h * x[i]) + f(c + h * x[i]));
  }
  return s * h;
}

}  // namespace bose2d::quad
