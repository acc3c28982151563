#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>

#include <boost/math/special_functions/bernoulli.hpp>

#include <cmath>
#include <stdexcept>

#include "errors.hpp"

// Special functions used by the closed-form results.
namespace cdkink::special {

inline double si(double z) {
  detail::require(std::isfinite(z), "si: argument must be finite");
  gsl_sf_result r;
  if (gsl_sf_Si_e(z, &r) != GSL_SUCCESS) throw std::runtime_error("si: GSL evaluation failed");
  return r.val;
}

inline double ci(double z) {
  detail::require(std::isfinite(z) && z > 0.0, "ci: argument must be finite and > 0");
  gsl_sf_result r;
  if (gsl_sf_Ci_e(z, &r) != GSL_SUCCESS) throw std::runtime_error("ci: GSL evaluation failed");
  return r.val;
}

inline double erf_fn(double x) { return std::erf(x); }

// Si(n, k) = sum_{m=1}^n sin(k m) / m, the order-n truncation of (pi - k)/2.
inline double si_partial(int n, double k) {
  detail::require(n >= 0, "si_partial: n must be >= 0");
  double s = 0.0;
  for (int m = 1; m <= n; ++m) s += std::sin(k * m) / m;
  return s;
}

// B_{2q}; B_2 = 1/6, B_4 = -1/30.
inline double bernoulli_2q(int q) {
  detail::require(q >= 0 && q <= 8, "bernoulli_2q: q must be in [0, 8]");
  return boost::math::bernoulli_b2n<double>(q);
}

}  // namespace cdkink::special
