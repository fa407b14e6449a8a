#include "necrobifurc/linear_modes.hpp"

#include <cmath>
#include <sstream>

#include "necrobifurc/bessel.hpp"
#include "necrobifurc/errors.hpp"

namespace necrobifurc {

ModeSolution::ModeSolution(const SteadyState& s, int l)
    : steady_(s), l_(l), basis_(l, s.params().R0, s.params().R) {
  const ModelParams& p = s.params();
  const SigmaValue sR = s.sigma(p.R);
  forcing_ = sR.second + p.beta * sR.deriv;
  g_denom_ = basis_.ds(p.R) + p.beta * basis_.s(p.R);
  if (!(g_denom_ > 0.0)) throw_error(ErrorCode::Internal, "G_beta denominator is not positive");

  using namespace bessel;
  const auto ev_R = evaluate(l, p.R);
  const double i_in = besseli(l, p.R0);
  const double k_in = besselk(l, p.R0);
  const double denom = i_in * (ev_R.deriv_k + p.beta * ev_R.value_k) - k_in * (ev_R.deriv_i + p.beta * ev_R.value_i);
  const double b = forcing_ / denom;
  b1_ = k_in * b;
  b2_ = -i_in * b;
}

void ModeSolution::check_radius(double r) const {
  const ModelParams& p = steady_.params();
  if (!(r >= p.R0 && r <= p.R)) {
    std::ostringstream os;
    os.precision(17);
    os << "radius " << r << " outside [" << p.R0 << ", " << p.R << "]";
    throw_error(ErrorCode::Domain, os.str());
  }
}

GBetaValue ModeSolution::g_beta(double r) const {
  check_radius(r);
  const double R = steady_.params().R;
  const double s = basis_.s(r);
  GBetaValue out;
  out.G = s / g_denom_;
  out.dG = basis_.ds(r) / g_denom_;
  out.G0 = s / basis_.ds(R);
  out.Ginf = s / basis_.s(R);
  return out;
}

RadialValue ModeSolution::q(double r) const {
  const GBetaValue g = g_beta(r);
  return {-forcing_ * g.G, -forcing_ * g.dG};
}

RadialValue ModeSolution::q_coefficients(double r) const {
  check_radius(r);
  const auto ev = bessel::evaluate(l_, r);
  return {b1_ * ev.value_i + b2_ * ev.value_k, b1_ * ev.deriv_i + b2_ * ev.deriv_k};
}

std::vector<double> a_l_sequence(const SteadyState& s, double r, int l_max) {
  const ModelParams& p = s.params();
  require_domain(l_max >= 1, "l_max must be at least 1");
  if (!(r > p.R0 && r <= p.R)) throw_error(ErrorCode::Domain, "a_l needs R0 < r <= R (G_beta vanishes at R0)");
  std::vector<double> out;
  out.reserve(l_max);
  for (int l = 1; l <= l_max; ++l) {
    const ShellBasis b(l, p.R0, p.R);
    out.push_back(b.ds_minus_l_over_r(r) / b.s(r));
  }
  return out;
}

BSequence b_l_sequence(const SteadyState& s, int l_max) {
  require_domain(l_max >= 1, "l_max must be at least 1");
  const ModelParams& p = s.params();
  BSequence out;
  for (int l = 1; l <= l_max; ++l) {
    const ModeSolution m(s, l);
    out.inner.push_back(m.g_beta(p.R0).dG);
    out.outer.push_back(m.g_beta(p.R).dG);
  }
  return out;
}

HarmonicCoefficients harmonic_coefficients(const ModeSolution& m, double prolif) {
  const int l = m.l();
  if (l < 1) throw_error(ErrorCode::Misuse, "harmonic coefficients need l >= 1; use l0_mode for l = 0");
  const ModelParams& p = m.steady().params();
  const double R0 = p.R0, R = p.R;
  HarmonicCoefficients h;
  h.l = l;
  h.prolif = prolif;
  h.R0 = R0;
  h.R = R;
  h.inner_flux = prolif * m.q(R0).deriv;
  const double ps_dR = m.steady().pressure(R, prolif).deriv;
  h.outer_data = p.g_inv * (l * l - 1.0) / (R * R) - ps_dR + (prolif - p.chi) * m.q(R).value;
  const double Rl = std::pow(R, l), R2l = Rl * Rl, R02l = std::pow(R0, 2 * l);
  const double qterm = std::pow(R0, l + 1) * h.inner_flux / l;
  h.d1 = (qterm + Rl * h.outer_data) / (R2l + R02l);
  h.d2 = (-qterm * R2l + Rl * R02l * h.outer_data) / (R2l + R02l);
  return h;
}

RadialValue HarmonicCoefficients::eval(double r) const {
  const double x = R0 / R, y = r / R;
  const double lx = std::log(x), ly = std::log(y);
  const double xl_yl = std::exp(l * (lx + ly));
  const double xy_l = std::exp(l * (lx - ly));
  const double xl = std::exp(l * lx);
  const double yl = std::exp(l * ly);
  const double norm = 1.0 + xl * xl;
  const double qc = inner_flux / l;
  RadialValue out;
  out.value = (qc * R0 * (xl_yl - xy_l) + outer_data * (yl + xl * xy_l)) / norm;
  out.deriv = (inner_flux * (R0 / r) * (xl_yl + xy_l) + outer_data * (l / r) * (yl - xl * xy_l)) / norm;
  return out;
}

RadialValue mode_pressure(const ModeSolution& m, const HarmonicCoefficients& h, double r) {
  const ModelParams& p = m.steady().params();
  const RadialValue qv = m.q(r);
  const RadialValue hv = h.eval(r);
  const double k = h.prolif - p.chi;
  return {-k * qv.value + hv.value, -k * qv.deriv + hv.deriv};
}

L0Mode l0_mode(const ModeSolution& m, double prolif) {
  if (m.l() != 0) throw_error(ErrorCode::Misuse, "l0_mode called with l != 0");
  const ModelParams& p = m.steady().params();
  const double R = p.R;
  L0Mode out;
  out.p1_at_R = -p.g_inv / (R * R) - m.steady().pressure(R, prolif).deriv;
  out.dp1_at_R = -(prolif - p.chi) * m.q(R).deriv;
  out.inner_flux_mismatch = prolif * m.q(p.R0).deriv;
  return out;
}

RadialValue mode_limits(int l, double R, double r) {
  if (l < 2) throw_error(ErrorCode::Domain, "mode limit holds for l >= 2");
  require_domain(R > 0.0, "R must be positive");
  if (!(r > 0.0 && r <= R)) throw_error(ErrorCode::Domain, "mode limit needs 0 < r <= R");
  using namespace bessel;
  const double coeff = -besseli_ratio(0, R);
  const double ratio = std::exp(log_besseli(l, r) - log_besseli(l, R));
  return {coeff * ratio, coeff * ratio * dlog_besseli(l, r)};
}

}  // namespace necrobifurc
