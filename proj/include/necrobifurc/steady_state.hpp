#pragma once

#include <utility>

#include "necrobifurc/params.hpp"
#include "necrobifurc/shell_basis.hpp"

namespace necrobifurc {

struct SigmaValue {
  double value;   ///< sigma_s(r)
  double deriv;   ///< sigma_s'(r)
  double second;  ///< sigma_s''(r) = sigma_s - sigma_s'/r
};

struct EFValue {
  double E;
  double F;
  double dE;
  double dF;
};

struct PressureValue {
  double value;
  double deriv;
};

/// Radially symmetric steady state on the annulus R0 <= r <= R.
///
/// sigma_s = A1 I_0 + A2 K_0 = sigma_ul E(r) + F(r), where E solves the
/// homogeneous Robin problem with E(R0) = 1 and F the inhomogeneous one with
/// F(R0) = 0. The apoptosis rate always comes from the flux balance
///   A = 2 (R sigma'(R) - R0 sigma'(R0)) / (R^2 - R0^2),
/// which is what makes the pressure Neumann data at R consistent.
class SteadyState {
 public:
  explicit SteadyState(const ModelParams& p);

  const ModelParams& params() const { return params_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double apopt() const { return apopt_; }
  double denom() const { return denom_; }

  SigmaValue sigma(double r) const;
  /// sigma_s'' from (I_0'' , K_0'') = ((I_0 + I_2)/2, (K_0 + K_2)/2) and A1, A2.
  double sigma_second_direct(double r) const;
  /// A1 I_0(r) + A2 K_0(r) without the E/F normalisation.
  double sigma_direct(double r) const;
  EFValue ef(double r) const;

  PressureValue pressure(double r) const { return pressure(r, params_.prolif); }
  /// Pressure for a different proliferation rate with the same geometry.
  PressureValue pressure(double r, double prolif) const;
  /// C1 and C2 for a given proliferation rate.
  std::pair<double, double> pressure_constants(double prolif) const;

  const ShellBasis& basis() const { return basis_; }

 private:
  void check_radius(double r) const;

  ModelParams params_;
  ShellBasis basis_;
  double outer_scale_;  // (I_0'(R)/I_0(R) + beta) * D
  double a1_ = 0.0, a2_ = 0.0, c1_ = 0.0, c2_ = 0.0, apopt_ = 0.0, denom_ = 0.0;
};

/// Flux-balance apoptosis rate for params with the outer radius replaced by R.
double apoptosis_of_radius(const ModelParams& p, double R);

/// Outer radius in [lo, hi] at which the flux-balance apoptosis rate equals
/// target. The bracket is scanned before the root is polished, so several
/// roots resolve to the smallest one. NoRoot carries the scanned range.
double solve_radius(const ModelParams& p, double apopt_target, double lo, double hi);

/// Closed-form limit profiles. E0 is the beta = 0 profile, E_inf and F_inf
/// the beta -> infinity profiles on the same annulus (NaN when r < R0).
/// sigma/dsigma/apopt/p/dp are the joint beta -> infinity, R0 -> 0 limits.
struct SteadyLimits {
  double E0;
  double E_inf;
  double F_inf;
  double sigma;
  double dsigma;
  double apopt;
  double p;
  double dp;
};

SteadyLimits steady_limits(const ModelParams& p, double r);

/// Two candidate closed forms for the joint-limit pressure differ in whether
/// sigma's limit enters as I_0(r)/I_0(R) (and I_1(r)/I_0(R) for p') or as
/// I_0(r)/I_1(R) (and I_0(r)/I_1(R)). Both are compared against the generic
/// path at a large-beta, small-R0 parameter set.
struct PressureLimitResolution {
  double beta;
  double R0;
  double err_i0_form;       ///< max rel error of the I_0(r)/I_0(R) candidate
  double err_i1_form;       ///< max rel error of the I_0(r)/I_1(R) candidate
  double err_i0_form_deriv;
  double err_i1_form_deriv;
  bool i0_form_matches;
};

PressureLimitResolution resolve_pressure_limit(const ModelParams& p, double beta = 1e6,
                                               double R0 = 1e-4);

}  // namespace necrobifurc
