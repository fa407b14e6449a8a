#pragma once

#include <utility>

// Modified Bessel functions I_n, K_n of non-negative integer order and real
// argument, with derivatives, exponentially scaled variants, and log-domain
// evaluation for the large-order / small-argument corner where the plain
// values overflow or underflow.
//
// Algorithm split:
//   I_n: power series for x <= max(20, 2n); otherwise the Wronskian
//        I_n = 1 / (x (K_{n+1} + K_n I_{n+1}/I_n)) with the ratio from the
//        backward (Gauss) continued fraction.
//   K_0, K_1: log-bearing series for x <= 2, Steed's continued fraction above.
//   K_n: upward recurrence from K_0, K_1 (the stable direction).
//
// All functions are pure and thread-safe. Invalid arguments throw
// necrobifurc::Error with ErrorCode::Domain.

namespace necrobifurc::bessel {

/// I_n(x), x >= 0.
double besseli(int n, double x);
/// K_n(x), x > 0.
double besselk(int n, double x);
/// e^{-x} I_n(x).
double besseli_scaled(int n, double x);
/// e^{x} K_n(x).
double besselk_scaled(int n, double x);

double log_besseli(int n, double x);
double log_besselk(int n, double x);

/// I_{n+1}(x) / I_n(x), x > 0.
double besseli_ratio(int n, double x);
/// K_{n+1}(x) / K_n(x), x > 0.
double besselk_ratio(int n, double x);

/// I_n'(x) / I_n(x) = n/x + I_{n+1}/I_n.
double dlog_besseli(int n, double x);
/// K_n'(x) / K_n(x) = n/x - K_{n+1}/K_n (always negative).
double dlog_besselk(int n, double x);

/// (I_n'(x), K_n'(x)) for x > 0.
std::pair<double, double> bessel_derivs(int n, double x);

struct BesselEval {
  int order = 0;
  double argument = 0.0;
  double value_i = 0.0;
  double value_k = 0.0;
  double deriv_i = 0.0;
  double deriv_k = 0.0;
  /// When set, value_i/deriv_i carry e^{-x} and value_k/deriv_k carry e^{x}.
  bool scaled = false;
};

BesselEval evaluate(int n, double x, bool scaled = false);

}  // namespace necrobifurc::bessel
