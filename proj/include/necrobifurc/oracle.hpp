#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "necrobifurc/linear_modes.hpp"
#include "necrobifurc/params.hpp"
#include "necrobifurc/steady_state.hpp"

namespace necrobifurc::oracle {

/// u'(x) + alpha u(x) = value, or u(x) = value when dirichlet is set.
struct BoundaryCondition {
  bool dirichlet = true;
  double alpha = 0.0;
  double value = 0.0;

  static BoundaryCondition fixed(double v) { return {true, 0.0, v}; }
  static BoundaryCondition robin(double alpha, double v) { return {false, alpha, v}; }
};

/// u'' + u'/r - c(r) u = f(r) on [a, b].
struct RadialBVP {
  double a = 0.0;
  double b = 1.0;
  std::function<double(double)> c;
  std::function<double(double)> f;
  /// Nodal source values (n + 1 of them); takes precedence over f when set.
  std::vector<double> f_values;
  BoundaryCondition left;
  BoundaryCondition right;
};

struct RadialProfile {
  std::vector<double> r_values;
  std::vector<double> values;
  double grid_spacing = 0.0;
  std::optional<double> convergence_order;

  /// Second-order one-sided derivative at either end.
  double deriv_left() const;
  double deriv_right() const;
};

/// Second-order central differences with ghost nodes for Robin ends and a
/// Thomas elimination. Throws Internal on a vanishing pivot.
RadialProfile solve_radial_bvp(const RadialBVP& bvp, int n);

RadialProfile solve_sigma_bvp(const ModelParams& p, int n);
RadialProfile solve_q_bvp(const ModelParams& p, int l, int n);

struct PressureProfile {
  RadialProfile profile;
  /// p'(R) - chi sigma'(R) from the discrete solution; vanishes only when the
  /// apoptosis rate satisfies the flux balance.
  double consistency_residual = 0.0;
};

/// Neumann at R0, Dirichlet at R, source built from the discrete sigma on the
/// same grid. apopt_override replaces the flux-balance apoptosis rate.
PressureProfile solve_pressure_bvp(const ModelParams& p, const SteadyState& s, int n,
                                   std::optional<double> apopt_override = std::nullopt);

/// First-order pressure P1 for mode l >= 1 at proliferation rate prolif.
struct ModePressureProfile {
  RadialProfile profile;
  double dp1_at_R = 0.0;
};
ModePressureProfile solve_mode_pressure_bvp(const ModelParams& p, int l, double prolif, int n);

/// One row of an oracle report.
struct Comparison {
  std::string quantity;
  int grid_n = 0;
  double max_rel_err = 0.0;  ///< Richardson value against the closed form, relative to max |closed form|
  double conv_order = 0.0;   ///< log2 of successive-difference ratio from n, 2n, 4n
};

/// Solves at n, 2n and 4n, extrapolates (4 u_2n - u_n)/3 onto the n grid and
/// compares against exact(r).
Comparison compare_with_richardson(const std::string& quantity, int n,
                                   const std::function<RadialProfile(int)>& solve,
                                   const std::function<double(double)>& exact);

std::vector<Comparison> steady_comparisons(const ModelParams& p, int n);
Comparison mode_comparison(const ModelParams& p, int l, int n);
Comparison mode_pressure_comparison(const ModelParams& p, int l, double prolif, int n);

struct Residual {
  int grid_n;
  double value;
};
/// Pressure consistency residual at n, 2n, 4n with its observed order.
struct ConsistencyStudy {
  std::vector<Residual> residuals;
  double order;
};
ConsistencyStudy pressure_consistency_study(const ModelParams& p, int n,
                                            std::optional<double> apopt_override = std::nullopt);

struct ExpansionReport {
  int l = 0;
  int n_r = 0;
  int n_theta = 0;
  std::vector<double> eps;
  std::vector<double> err_second;  ///< max |sigma - sigma_s - eps Q cos(l theta)|
  std::vector<double> err_first;   ///< max |sigma - sigma_s|
  double baseline_error = 0.0;     ///< eps = 0 solve against sigma_s
  bool baseline_subtracted = false;
  std::vector<double> ratio_second;  ///< err_second[k] / err_second[k+1]
  std::vector<double> ratio_first;
};

/// Solves Delta sigma = sigma on the annulus R0 < r < R + eps cos(l theta) in
/// boundary-fitted coordinates r = R0 + rho (R + eps cos(l theta) - R0) and
/// measures the first-order expansion error over nodes with r <= R.
///
/// When the eps = 0 discretisation error is comparable to the smallest
/// expansion error, the discrete eps = 0 field at the same (rho, theta) nodes
/// is used as the reference instead of the closed form, which cancels the
/// leading discretisation error. If even that cannot resolve the expansion
/// error, InconclusiveResolution is thrown.
ExpansionReport expansion_check_2d(const ModelParams& p, int l, const std::vector<double>& eps_list, int n_r,
                                   int n_theta);

}  // namespace necrobifurc::oracle
