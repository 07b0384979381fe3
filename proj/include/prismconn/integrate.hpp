#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "prismconn/errors.hpp"

namespace prismconn {

struct Integral {
  double value = 0.0;
  double error = 0.0;  // embedded Gauss-Kronrod estimate
  double l1 = 0.0;     // integral of |f|, the scale the tolerance is relative to
};

inline constexpr unsigned kDefaultMaxDepth = 15;

// Adaptive G7/K15 on [a, b]. Throws NumericError if the requested relative
// tolerance (against the L1 norm) is not met within max_depth bisections.
template <class F>
Integral integrate(F&& f, double a, double b, double rel_tol, unsigned max_depth = kDefaultMaxDepth,
                   bool throw_on_failure = true) {
  Integral out;
  if (a == b) return out;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  out.value = GK::integrate(f, a, b, max_depth, rel_tol, &out.error, &out.l1);
  if (!std::isfinite(out.value)) throw NumericError("integrand produced a non-finite value");
  if (throw_on_failure && out.error > rel_tol * out.l1 && out.error > 1e-300) {
    throw NumericError("quadrature tolerance " + std::to_string(rel_tol) +
                       " not met on [" + std::to_string(a) + ", " + std::to_string(b) +
                       "]: error " + std::to_string(out.error) + " vs L1 " +
                       std::to_string(out.l1));
  }
  return out;
}

// Same, but split at interior breakpoints where the integrand has kinks.
template <class F>
Integral integrate_piecewise(F&& f, std::vector<double> points, double rel_tol,
                             unsigned max_depth = kDefaultMaxDepth) {
  std::sort(points.begin(), points.end());
  Integral total;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1] <= points[i]) continue;
    const Integral part = integrate(f, points[i], points[i + 1], rel_tol, max_depth);
    total.value += part.value;
    total.error += part.error;
    total.l1 += part.l1;
  }
  return total;
}

}  // namespace prismconn
