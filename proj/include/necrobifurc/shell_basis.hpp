#pragma once

// Normalised order-l solutions of r^2 u'' + r u' - (r^2 + l^2) u = 0 on an
// annulus [R0, R], evaluated in log domain so that K_l(R0) ~ R0^{-l} and
// I_l(R) ~ e^R never appear as raw values.
//
//   s(r) = (K_l(R0) I_l(r) - I_l(R0) K_l(r)) / (K_l(R0) I_l(R))
//
// vanishes at R0 and equals 1 - rho(R) at R, with
//   rho(r) = I_l(R0) K_l(r) / (K_l(R0) I_l(r)) in (0, 1].

namespace necrobifurc {

class ShellBasis {
 public:
  ShellBasis(int l, double R0, double R);

  int order() const { return l_; }
  double inner() const { return R0_; }
  double outer() const { return R_; }

  double log_rho(double r) const;
  double s(double r) const;
  double ds(double r) const;
  /// s'(r) - (l/r) s(r), formed without cancellation.
  double ds_minus_l_over_r(double r) const;

  /// Normalised solution u with u(R0) = 1 and u'(R) + beta u(R) = 0.
  struct Outer {
    double value;
    double deriv;
  };
  Outer outer_unit(double r, double beta) const;
  /// Denominator D of outer_unit: u_raw(R0) / (K_l(R0) (I_l'(R) + beta I_l(R))).
  double outer_denominator(double beta) const;

  double dlog_i_outer() const { return dI_R_; }
  double dlog_k_outer() const { return dK_R_; }

 private:
  int l_;
  double R0_, R_;
  double lI_R0_, lK_R0_, lI_R_, lK_R_;
  double dI_R_, dK_R_;
};

}  // namespace necrobifurc
