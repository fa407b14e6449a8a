#include "necrobifurc/shell_basis.hpp"

#include <cmath>

#include "necrobifurc/bessel.hpp"
#include "necrobifurc/errors.hpp"

namespace necrobifurc {

ShellBasis::ShellBasis(int l, double R0, double R) : l_(l), R0_(R0), R_(R) {
  require_domain(l >= 0, "mode index must be non-negative");
  require_domain(R0 > 0.0 && R > R0, "shell basis needs 0 < R0 < R");
  lI_R0_ = bessel::log_besseli(l, R0);
  lK_R0_ = bessel::log_besselk(l, R0);
  lI_R_ = bessel::log_besseli(l, R);
  lK_R_ = bessel::log_besselk(l, R);
  dI_R_ = bessel::dlog_besseli(l, R);
  dK_R_ = bessel::dlog_besselk(l, R);
}

double ShellBasis::log_rho(double r) const {
  return lI_R0_ + bessel::log_besselk(l_, r) - lK_R0_ - bessel::log_besseli(l_, r);
}

double ShellBasis::s(double r) const {
  if (r == R0_) return 0.0;
  const double lr = log_rho(r);
  return std::exp(bessel::log_besseli(l_, r) - lI_R_) * -std::expm1(lr);
}

double ShellBasis::ds(double r) const {
  const double li = bessel::log_besseli(l_, r);
  const double lk = bessel::log_besselk(l_, r);
  const double t1 = std::exp(li - lI_R_) * bessel::dlog_besseli(l_, r);
  const double t2 = std::exp(lI_R0_ + lk - lK_R0_ - lI_R_) * -bessel::dlog_besselk(l_, r);
  return t1 + t2;
}

double ShellBasis::ds_minus_l_over_r(double r) const {
  // K_l(R0) I_{l+1}(r) + I_l(R0) K_{l+1}(r), both terms positive.
  const double t1 = std::exp(bessel::log_besseli(l_ + 1, r) - lI_R_);
  const double t2 = std::exp(lI_R0_ + bessel::log_besselk(l_ + 1, r) - lK_R0_ - lI_R_);
  return t1 + t2;
}

double ShellBasis::outer_denominator(double beta) const {
  const double c = -(dK_R_ + beta) / (dI_R_ + beta);
  return 1.0 + c * std::exp(lK_R_ - lI_R_ + lI_R0_ - lK_R0_);
}

ShellBasis::Outer ShellBasis::outer_unit(double r, double beta) const {
  const double c = -(dK_R_ + beta) / (dI_R_ + beta);
  const double d = outer_denominator(beta);
  const double lk = bessel::log_besselk(l_, r);
  const double li = bessel::log_besseli(l_, r);
  const double k_part = std::exp(lk - lK_R0_);
  const double i_part = c * std::exp(lK_R_ - lI_R_ + li - lK_R0_);
  Outer out;
  out.value = (k_part + i_part) / d;
  out.deriv = (k_part * bessel::dlog_besselk(l_, r) + i_part * bessel::dlog_besseli(l_, r)) / d;
  return out;
}

}  // namespace necrobifurc
