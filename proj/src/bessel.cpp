#include "necrobifurc/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "necrobifurc/errors.hpp"

namespace necrobifurc::bessel {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr int kMaxIterations = 200000;

void check_order(int n) {
  if (n < 0) throw_error(ErrorCode::Domain, "Bessel order must be non-negative, got " + std::to_string(n));
}

void check_i_argument(double x) {
  if (!(x >= 0.0)) throw_error(ErrorCode::Domain, "I_n requires x >= 0, got " + std::to_string(x));
}

void check_k_argument(double x) {
  // K_n is singular at the origin; callers needing R0 -> 0 use the limit paths.
  if (!(x > 0.0)) throw_error(ErrorCode::Domain, "K_n requires x > 0, got " + std::to_string(x));
}

bool use_series(int n, double x) { return x <= std::max(20.0, 2.0 * n); }

// Normalised power series: I_n(x) = lead * sum with lead = (x/2)^n / n!.
double series_sum(int n, double x) {
  const double y = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= y / (static_cast<double>(k) * static_cast<double>(k + n));
    sum += term;
    if (term <= 0.5 * kEps * sum) break;
  }
  return sum;
}

double series_lead(int n, double x) {
  double lead = 1.0;
  const double half = 0.5 * x;
  for (int k = 1; k <= n; ++k) lead *= half / k;
  return lead;
}

double series_log_lead(int n, double x) {
  return n * std::log(0.5 * x) - std::lgamma(n + 1.0);
}

// Modified Lentz evaluation of I_{n+1}/I_n = 1/(2(n+1)/x + 1/(2(n+2)/x + ...)).
double ratio_continued_fraction(int n, double x) {
  constexpr double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    const double b = 2.0 * (n + k) / x;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) return f;
  }
  throw_error(ErrorCode::Internal, "I-ratio continued fraction did not converge");
}

struct KPair {
  double k0;
  double k1;
};

// e^x K_0(x), e^x K_1(x).
KPair k01_scaled(double x) {
  if (x <= 2.0) {
    const double y = 0.25 * x * x;
    const double log_half = std::log(0.5 * x);
    double i0 = 0.0, i1 = 0.0, h_sum = 0.0, psi_sum = 0.0;
    double t0 = 1.0;  // y^k / (k!)^2
    double t1 = 1.0;  // y^k / (k! (k+1)!)
    double harmonic = 0.0;
    for (int k = 0; k < 200; ++k) {
      if (k > 0) {
        harmonic += 1.0 / k;
        t0 *= y / (static_cast<double>(k) * k);
        t1 *= y / (static_cast<double>(k) * (k + 1));
      }
      i0 += t0;
      i1 += t1;
      h_sum += harmonic * t0;
      const double psi_pair = 2.0 * (harmonic - kEulerGamma) + 1.0 / (k + 1);
      psi_sum += psi_pair * t1;
      if (t0 < kEps * 1e-2 * i0 && k > 2) break;
    }
    i1 *= 0.5 * x;
    const double k0 = -(log_half + kEulerGamma) * i0 + h_sum;
    const double k1 = 1.0 / x + log_half * i1 - 0.25 * x * psi_sum;
    const double scale = std::exp(x);
    return {k0 * scale, k1 * scale};
  }
  // Steed's continued fraction (order 0).
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 1;
  for (; i < kMaxIterations; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps * 0.5) break;
  }
  if (i == kMaxIterations) throw_error(ErrorCode::Internal, "K continued fraction did not converge");
  h = a1 * h;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  return {k0, k1};
}

double k_scaled_upward(int n, double x) {
  const KPair base = k01_scaled(x);
  if (n == 0) return base.k0;
  double prev = base.k0;
  double cur = base.k1;
  for (int j = 1; j < n; ++j) {
    const double next = prev + (2.0 * j / x) * cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Wronskian normalisation: I_n K_{n+1} + I_{n+1} K_n = 1/x.
double i_scaled_wronskian(int n, double x) {
  const double kn = k_scaled_upward(n, x);
  const double kn1 = k_scaled_upward(n + 1, x);
  const double ratio = ratio_continued_fraction(n, x);
  return 1.0 / (x * (kn1 + ratio * kn));
}

}  // namespace

double besseli(int n, double x) {
  check_order(n);
  check_i_argument(x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (use_series(n, x)) {
    const double lead = series_lead(n, x);
    const double sum = series_sum(n, x);
    const double value = lead * sum;
    if (lead >= std::numeric_limits<double>::min() && std::isfinite(value)) return value;
    return std::exp(series_log_lead(n, x) + std::log(sum));
  }
  return i_scaled_wronskian(n, x) * std::exp(x);
}

double besseli_scaled(int n, double x) {
  check_order(n);
  check_i_argument(x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (use_series(n, x)) {
    const double lead = series_lead(n, x);
    const double sum = series_sum(n, x);
    const double value = lead * sum;
    if (lead >= std::numeric_limits<double>::min() && std::isfinite(value)) return value * std::exp(-x);
    return std::exp(series_log_lead(n, x) + std::log(sum) - x);
  }
  return i_scaled_wronskian(n, x);
}

double log_besseli(int n, double x) {
  check_order(n);
  check_i_argument(x);
  if (x == 0.0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (use_series(n, x)) return series_log_lead(n, x) + std::log(series_sum(n, x));
  return std::log(i_scaled_wronskian(n, x)) + x;
}

double besselk_scaled(int n, double x) {
  check_order(n);
  check_k_argument(x);
  return k_scaled_upward(n, x);
}

double besselk(int n, double x) {
  check_order(n);
  check_k_argument(x);
  const double scaled = k_scaled_upward(n, x);
  if (!std::isfinite(scaled)) return scaled;
  return scaled * std::exp(-x);
}

double besselk_ratio(int n, double x) {
  check_order(n);
  check_k_argument(x);
  const KPair base = k01_scaled(x);
  double rho = base.k1 / base.k0;
  for (int j = 1; j <= n; ++j) rho = 1.0 / rho + 2.0 * j / x;
  return rho;
}

double log_besselk(int n, double x) {
  check_order(n);
  check_k_argument(x);
  const KPair base = k01_scaled(x);
  double log_value = std::log(base.k0) - x;
  double rho = base.k1 / base.k0;
  for (int j = 0; j < n; ++j) {
    log_value += std::log(rho);
    rho = 1.0 / rho + 2.0 * (j + 1) / x;
  }
  return log_value;
}

double besseli_ratio(int n, double x) {
  check_order(n);
  if (!(x > 0.0)) throw_error(ErrorCode::Domain, "I-ratio requires x > 0");
  return ratio_continued_fraction(n, x);
}

double dlog_besseli(int n, double x) {
  return n / x + besseli_ratio(n, x);
}

double dlog_besselk(int n, double x) {
  return n / x - besselk_ratio(n, x);
}

std::pair<double, double> bessel_derivs(int n, double x) {
  check_order(n);
  check_k_argument(x);
  // Sign-definite forms: I' = (n/x) I_n + I_{n+1},  K' = -K_{n-1} - (n/x) K_n.
  const double di = (n / x) * besseli(n, x) + besseli(n + 1, x);
  const double dk = n == 0 ? -besselk(1, x) : -besselk(n - 1, x) - (n / x) * besselk(n, x);
  return {di, dk};
}

BesselEval evaluate(int n, double x, bool scaled) {
  check_order(n);
  check_k_argument(x);
  BesselEval out;
  out.order = n;
  out.argument = x;
  out.scaled = scaled;
  if (scaled) {
    const double in = besseli_scaled(n, x);
    const double in1 = besseli_scaled(n + 1, x);
    const double kn = besselk_scaled(n, x);
    const double knm1 = n == 0 ? besselk_scaled(1, x) : besselk_scaled(n - 1, x);
    out.value_i = in;
    out.value_k = kn;
    out.deriv_i = (n / x) * in + in1;
    out.deriv_k = n == 0 ? -knm1 : -knm1 - (n / x) * kn;
  } else {
    out.value_i = besseli(n, x);
    out.value_k = besselk(n, x);
    const auto [di, dk] = bessel_derivs(n, x);
    out.deriv_i = di;
    out.deriv_k = dk;
  }
  return out;
}

}  // namespace necrobifurc::bessel
