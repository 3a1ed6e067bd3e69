#include "bose2d/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "bose2d/errors.hpp"

namespace bose2d::quad {
namespace {

// QUADPACK qk15 abscissae and weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double fsum = f(c - dx) + f(c + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  resk *= h;
  resg *= h;
  return {a, b, resk, std::abs(resk - resg)};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 Tolerance tol, int max_intervals) {
  Result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> heap;
  Segment first = kronrod15(f, a, b);
  double value = first.value;
  double error = first.error;
  heap.push(first);
  out.evaluations = 15;
  int intervals = 1;
  while (error > std::max(tol.absolute, tol.relative * std::abs(value))) {
    if (intervals >= max_intervals) break;
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;
    }
    Segment left = kronrod15(f, worst.a, mid);
    Segment right = kronrod15(f, mid, worst.b);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to remove drift from the incremental updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  out.converged = std::isfinite(value) &&
                  error <= std::max(tol.absolute, tol.relative * std::abs(value));
  return out;
}

double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, Tolerance tol, int max_intervals) {
  const Result r = integrate(f, a, b, tol, max_intervals);
  if (!r.converged) {
    throw SolverError("adaptive quadrature did not converge on [" +
                      std::to_string(a) + ", " + std::to_string(b) +
                      "], error estimate " + std::to_string(r.error));
  }
  return r.value;
}

}  // namespace bose2d::quad
