#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace montest {

struct ScalarMinimum {
  double x;
  double value;
  std::size_t evaluations;
};

/// Golden-section search for a minimizer of a quasiconvex `f` on [lo, hi].
/// Stops once the bracket is narrower than rel_tol * max(1, |x|).
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double rel_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  std::size_t evaluations = 2;
  while (b - a > rel_tol * std::max(1.0, std::abs(0.5 * (a + b)))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++evaluations;
  }
  // Endpoints count too: the minimum of a monotone objective sits on the box.
  ScalarMinimum best{c, fc, evaluations};
  if (fd < best.value) best = {d, fd, evaluations};
  for (const double edge : {lo, hi}) {
    if (edge != a && edge != b) continue;
    const double fe = f(edge);
    ++best.evaluations;
    if (fe < best.value) best = {edge, fe, best.evaluations};
  }
  return best;
}

}  // namespace montest
