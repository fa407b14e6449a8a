#pragma once

#include <vector>

#include "necrobifurc/shell_basis.hpp"
#include "necrobifurc/steady_state.hpp"

namespace necrobifurc {

struct RadialValue {
  double value;
  double deriv;
};

struct GBetaValue {
  double G;
  double dG;
  double G0;    ///< beta = 0 variant, s(r) / s'(R)
  double Ginf;  ///< beta -> infinity variant, s(r) / s(R)
};

/// Radial factor Q_l of the first-order nutrient perturbation for a boundary
/// perturbation cos(l theta), on a fixed steady state.
///
///   Q_l(r) = -(sigma_s''(R) + beta sigma_s'(R)) G_beta(r; l)
///          = B1 I_l(r) + B2 K_l(r)
///
/// Both paths are available; the G_beta path is the log-domain one and is
/// used by everything downstream.
class ModeSolution {
 public:
  ModeSolution(const SteadyState& s, int l);

  int l() const { return l_; }
  const SteadyState& steady() const { return steady_; }
  const ShellBasis& basis() const { return basis_; }

  double b1() const { return b1_; }
  double b2() const { return b2_; }
  /// sigma_s''(R) + beta sigma_s'(R).
  double forcing() const { return forcing_; }

  RadialValue q(double r) const;
  /// Same quantity from B1, B2 and unscaled Bessel values.
  RadialValue q_coefficients(double r) const;
  GBetaValue g_beta(double r) const;

 private:
  void check_radius(double r) const;

  SteadyState steady_;
  int l_;
  ShellBasis basis_;
  double forcing_ = 0.0;
  double g_denom_ = 0.0;  // s'(R) + beta s(R)
  double b1_ = 0.0, b2_ = 0.0;
};

/// a_l(r) = G_beta'(r; l) / G_beta(r; l) - l/r for l = 1..l_max.
std::vector<double> a_l_sequence(const SteadyState& s, double r, int l_max);

struct BSequence {
  std::vector<double> inner;  ///< b_l(R0), l = 1..l_max
  std::vector<double> outer;  ///< b_l(R)
};

/// b_l(r) = G_beta'(r; l).
BSequence b_l_sequence(const SteadyState& s, int l_max);

/// Harmonic part D1 r^l + D2 r^{-l} of the first-order pressure.
///
/// D1, D2 are reported as raw numbers (they over/underflow for large l);
/// evaluation goes through the normalised form in x = R0/R, y = r/R.
struct HarmonicCoefficients {
  int l;
  double prolif;
  double d1;
  double d2;
  double inner_flux;  ///< prolif * Q_l'(R0)
  double outer_data;  ///< g_inv (l^2-1)/R^2 - p_s'(R) + (prolif - chi) Q_l(R)
  double R0;
  double R;

  RadialValue eval(double r) const;
};

HarmonicCoefficients harmonic_coefficients(const ModeSolution& m, double prolif);

/// First-order pressure P1(r) (p_1 = P1(r) cos l theta) and its derivative.
RadialValue mode_pressure(const ModeSolution& m, const HarmonicCoefficients& h, double r);

struct L0Mode {
  double p1_at_R;
  double dp1_at_R;
  /// prolif * Q_0'(R0): the inner Neumann flux the constant harmonic cannot carry.
  double inner_flux_mismatch;
};

L0Mode l0_mode(const ModeSolution& m, double prolif);

/// beta -> infinity, R0 -> 0 limit of Q_l and Q_l' (l >= 2).
RadialValue mode_limits(int l, double R, double r);

}  // namespace necrobifurc
