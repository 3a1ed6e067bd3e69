#include "bose2d/optimize.hpp"

#include <cmath>

namespace bose2d::opt {

ScalarMin golden_section(const std::function<double(double)>& f, double lo, double hi,
                         double tol, int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  int evals = 2;
  for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    ++evals;
  }
  return fc < fd ? ScalarMin{c, fc, evals} : ScalarMin{d, fd, evals};
}

}  // namespace bose2d::opt
