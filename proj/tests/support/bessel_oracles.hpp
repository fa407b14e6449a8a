#pragma once

// Reference values computed without touching the library's own kernels.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>

namespace oracle_ref {

// I_n(x) = sum_k (x/2)^{2k+n} / (k! (k+n)!), summed in long double.
inline long double besseli_series(int n, long double x) {
  const long double half = x / 2;
  long double term = 1;
  for (int k = 1; k <= n; ++k) term *= half / k;
  long double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= half * half / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (term < sum * 1e-21L) break;
  }
  return sum;
}

// K_n(x) = int_0^inf exp(-x cosh t) cosh(n t) dt.
inline double besselk_quadrature(int n, double x) {
  boost::math::quadrature::exp_sinh<long double> integrator;
  const long double xl = x;
  auto f = [&](long double t) -> long double {
    const long double e = -xl * std::cosh(t) + n * t;
    if (e < -11000) return 0;
    return 0.5L * (std::exp(e) + std::exp(-xl * std::cosh(t) - n * t));
  };
  long double err = 0;
  return static_cast<double>(integrator.integrate(f, 1e-20L, &err));
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace oracle_ref
