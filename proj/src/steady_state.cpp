#include "necrobifurc/steady_state.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "necrobifurc/bessel.hpp"
#include "necrobifurc/errors.hpp"

namespace necrobifurc {
namespace {

double validated_inner(const ModelParams& p) {
  validate(p);
  return p.R0;
}

}  // namespace

SteadyState::SteadyState(const ModelParams& p)
    : params_(p), basis_(0, validated_inner(p), p.R) {
  const double beta = p.beta;
  const double R0 = p.R0;
  const double R = p.R;
  const double d = basis_.outer_denominator(beta);
  if (!(d > 0.0) || !std::isfinite(d)) throw_error(ErrorCode::Internal, "steady-state denominator is not positive");
  outer_scale_ = (basis_.dlog_i_outer() + beta) * d;

  using namespace bessel;
  const double i0R = besseli(0, R), i1R = besseli(1, R), k0R = besselk(0, R), k1R = besselk(1, R);
  const double i0a = besseli(0, R0), k0a = besselk(0, R0);
  denom_ = i1R * k0a + k1R * i0a + beta * (i0R * k0a - k0R * i0a);
  a1_ = (p.sigma_ul * (k1R - beta * k0R) + beta * k0a) / denom_;
  a2_ = (p.sigma_ul * (i1R + beta * i0R) - beta * i0a) / denom_;

  const double ds0 = sigma(R0).deriv;
  const double dsR = sigma(R).deriv;
  apopt_ = 2.0 * (R * dsR - R0 * ds0) / (R * R - R0 * R0);
  std::tie(c1_, c2_) = pressure_constants(p.prolif);
}

void SteadyState::check_radius(double r) const {
  if (!(r >= params_.R0 && r <= params_.R)) {
    std::ostringstream os;
    os.precision(17);
    os << "radius " << r << " outside [" << params_.R0 << ", " << params_.R << "]";
    throw_error(ErrorCode::Domain, os.str());
  }
}

EFValue SteadyState::ef(double r) const {
  check_radius(r);
  const auto e = basis_.outer_unit(r, params_.beta);
  const double beta = params_.beta;
  EFValue out;
  out.E = e.value;
  out.dE = e.deriv;
  out.F = beta == 0.0 ? 0.0 : beta * basis_.s(r) / outer_scale_;
  out.dF = beta == 0.0 ? 0.0 : beta * basis_.ds(r) / outer_scale_;
  return out;
}

SigmaValue SteadyState::sigma(double r) const {
  const EFValue e = ef(r);
  SigmaValue out;
  out.value = params_.sigma_ul * e.E + e.F;
  out.deriv = params_.sigma_ul * e.dE + e.dF;
  out.second = out.value - out.deriv / r;
  return out;
}

double SteadyState::sigma_direct(double r) const {
  check_radius(r);
  return a1_ * bessel::besseli(0, r) + a2_ * bessel::besselk(0, r);
}

double SteadyState::sigma_second_direct(double r) const {
  check_radius(r);
  using namespace bessel;
  const double i2 = 0.5 * (besseli(0, r) + besseli(2, r));
  const double k2 = 0.5 * (besselk(0, r) + besselk(2, r));
  return a1_ * i2 + a2_ * k2;
}

std::pair<double, double> SteadyState::pressure_constants(double prolif) const {
  const double R0 = params_.R0;
  const double R = params_.R;
  const double c2 = prolif * sigma(R0).deriv * R0 - prolif * apopt_ * R0 * R0 / 2.0;
  const double c1 = params_.g_inv / R + (prolif - params_.chi) * sigma(R).value - c2 * std::log(R) -
                    prolif * apopt_ * R * R / 4.0;
  return {c1, c2};
}

PressureValue SteadyState::pressure(double r, double prolif) const {
  check_radius(r);
  const double R = params_.R;
  const double chi = params_.chi;
  const double c2 = prolif == params_.prolif ? c2_ : pressure_constants(prolif).second;
  const SigmaValue sr = sigma(r);
  const double sR = sigma(R).value;
  // Anchored at R so that p(R) = g_inv / R holds to rounding.
  PressureValue out;
  out.value = params_.g_inv / R + (prolif - chi) * (sR - sr.value) + c2 * std::log(r / R) -
              prolif * apopt_ / 4.0 * (R * R - r * r);
  out.deriv = prolif * apopt_ / 2.0 * r - (prolif - chi) * sr.deriv + c2 / r;
  return out;
}

double apoptosis_of_radius(const ModelParams& p, double R) {
  if (!(R > p.R0)) {
    std::ostringstream os;
    os.precision(17);
    os << "apoptosis rate needs R > R0, got R=" << R << " R0=" << p.R0;
    throw_error(ErrorCode::Domain, os.str());
  }
  ModelParams q = p;
  q.R = R;
  return SteadyState(q).apopt();
}

double solve_radius(const ModelParams& p, double apopt_target, double lo, double hi) {
  require_domain(lo > p.R0 && hi > p.R0, "radius bracket must lie above R0");
  require_domain(hi > lo, "radius bracket must satisfy lo < hi");
  constexpr int kScan = 128;
  std::vector<double> radii(kScan + 1), gaps(kScan + 1);
  double amin = std::numeric_limits<double>::infinity();
  double amax = -amin;
  for (int i = 0; i <= kScan; ++i) {
    radii[i] = lo + (hi - lo) * i / kScan;
    const double a = apoptosis_of_radius(p, radii[i]);
    amin = std::min(amin, a);
    amax = std::max(amax, a);
    gaps[i] = a - apopt_target;
    if (gaps[i] == 0.0) return radii[i];
  }
  for (int i = 0; i < kScan; ++i) {
    if ((gaps[i] < 0.0) != (gaps[i + 1] < 0.0)) {
      auto f = [&](double R) { return apoptosis_of_radius(p, R) - apopt_target; };
      std::uintmax_t iters = 200;
      const auto root = boost::math::tools::toms748_solve(f, radii[i], radii[i + 1], gaps[i], gaps[i + 1],
                                                          boost::math::tools::eps_tolerance<double>(52), iters);
      const double ga = std::abs(f(root.first));
      const double gb = std::abs(f(root.second));
      return ga <= gb ? root.first : root.second;
    }
  }
  std::ostringstream os;
  os.precision(10);
  os << "apoptosis target " << apopt_target << " not attained on [" << lo << ", " << hi
     << "]; scanned range [" << amin << ", " << amax << "]";
  throw_error(ErrorCode::NoRoot, os.str());
}

SteadyLimits steady_limits(const ModelParams& p, double r) {
  require_domain(p.R > 0.0, "R must be positive");
  if (!(r > 0.0 && r <= p.R)) throw_error(ErrorCode::Domain, "limit profile needs 0 < r <= R");
  using namespace bessel;
  const double R = p.R;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SteadyLimits out{nan, nan, nan, 0, 0, 0, 0, 0};
  if (p.R0 > 0.0 && p.R0 < R && r >= p.R0) {
    const ShellBasis basis(0, p.R0, R);
    out.E0 = basis.outer_unit(r, 0.0).value;
    // beta -> infinity: E solves u(R) = 0, F = s(r)/s(R).
    const double sR = basis.s(R);
    const double lk_r = log_besselk(0, r), li_r = log_besseli(0, r);
    const double lk_R = log_besselk(0, R), li_R = log_besseli(0, R);
    const double lk_a = log_besselk(0, p.R0), li_a = log_besseli(0, p.R0);
    // (I0(R)K0(r) - K0(R)I0(r)) / (I0(R)K0(R0) - K0(R)I0(R0)).
    const double num = std::exp(lk_r - lk_a) * -std::expm1(lk_R - li_R + li_r - lk_r);
    const double den = -std::expm1(lk_R - li_R + li_a - lk_a);
    out.E_inf = num / den;
    out.F_inf = basis.s(r) / sR;
  }
  const double i0R = besseli(0, R);
  const double ratio = besseli_ratio(0, R);
  out.sigma = besseli(0, r) / i0R;
  out.dsigma = besseli(1, r) / i0R;
  out.apopt = 2.0 / R * ratio;
  out.p = p.g_inv / R + (p.prolif - p.chi) * (1.0 - out.sigma) - p.prolif * out.apopt / 4.0 * (R * R - r * r);
  out.dp = p.prolif * out.apopt / 2.0 * r - (p.prolif - p.chi) * out.dsigma;
  return out;
}

PressureLimitResolution resolve_pressure_limit(const ModelParams& p, double beta, double R0) {
  using namespace bessel;
  ModelParams q = p;
  q.beta = beta;
  q.R0 = R0;
  // Boundary data consistent with the R0 -> 0 profile I_0(r)/I_0(R).
  q.sigma_ul = besseli(0, R0) / besseli(0, p.R);
  const SteadyState s(q);
  const double R = p.R;
  const double i0R = besseli(0, R), i1R = besseli(1, R);
  const double apopt = 2.0 / R * i1R / i0R;
  const double P = p.prolif, chi = p.chi;
  double scale_p = 0.0, scale_dp = 0.0;
  double e0 = 0.0, e1 = 0.0, d0 = 0.0, d1 = 0.0;
  constexpr int kSamples = 201;
  for (int i = 0; i < kSamples; ++i) {
    const double r = 0.05 * R + 0.95 * R * i / (kSamples - 1);
    const PressureValue g = s.pressure(r);
    const double base = p.g_inv / R - P * apopt / 4.0 * (R * R - r * r);
    const double cand0 = base + (P - chi) * (1.0 - besseli(0, r) / i0R);
    const double cand1 = base + (P - chi) * (1.0 - besseli(0, r) / i1R);
    const double dcand0 = P * apopt / 2.0 * r - (P - chi) * besseli(1, r) / i0R;
    const double dcand1 = P * apopt / 2.0 * r - (P - chi) * besseli(0, r) / i1R;
    scale_p = std::max(scale_p, std::abs(g.value));
    scale_dp = std::max(scale_dp, std::abs(g.deriv));
    e0 = std::max(e0, std::abs(cand0 - g.value));
    e1 = std::max(e1, std::abs(cand1 - g.value));
    d0 = std::max(d0, std::abs(dcand0 - g.deriv));
    d1 = std::max(d1, std::abs(dcand1 - g.deriv));
  }
  PressureLimitResolution out;
  out.beta = beta;
  out.R0 = R0;
  out.err_i0_form = e0 / scale_p;
  out.err_i1_form = e1 / scale_p;
  out.err_i0_form_deriv = d0 / scale_dp;
  out.err_i1_form_deriv = d1 / scale_dp;
  out.i0_form_matches = out.err_i0_form < out.err_i1_form && out.err_i0_form_deriv < out.err_i1_form_deriv;
  return out;
}

}  // namespace necrobifurc
