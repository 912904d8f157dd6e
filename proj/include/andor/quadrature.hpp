#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace andor {

// Adaptive Gauss-Kronrod on a finite interval. Integrands in this project
// are piecewise smooth, so depth 15 with a tight tolerance is plenty.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-12) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 15, tol);
}

}  // namespace andor
