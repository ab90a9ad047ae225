#pragma once

#include <cmath>

#include "erldp/errors.hpp"

namespace erldp {

struct GoldenResult {
  double x;
  double value;
  int iterations;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Stops once the bracket is narrower than `tol`. On equal values the
/// bracket keeps the left part, so ties resolve toward smaller x.
/// Throws NoConvergence when `budget` iterations do not reach `tol`.
template <class F>
GoldenResult golden_section_max(F&& f, double lo, double hi, double tol, int budget = 200) {
  if (!(hi >= lo)) throw DomainError("golden_section_max: empty bracket");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (b - a > tol) {
    if (it++ >= budget) throw NoConvergence("golden_section_max: iteration budget exhausted");
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  // the endpoints are candidates too: the maximum may sit on the boundary
  double best_x = a, best_f = f(a);
  const double mid = 0.5 * (a + b);
  const double candidates[] = {c, mid, d, b};
  const double values[] = {fc, f(mid), fd, f(b)};
  for (int i = 0; i < 4; ++i) {
    if (values[i] > best_f) {
      best_f = values[i];
      best_x = candidates[i];
    }
  }
  return {best_x, best_f, it};
}

}  // namespace erldp
