#pragma once

#include <vector>

#include "necrobifurc/linear_modes.hpp"
#include "necrobifurc/steady_state.hpp"

namespace necrobifurc {

/// Mean curvature of r = R + eps cos(l theta) expanded as kappa0 + eps kappa1 cos(l theta).
struct CurvatureLinearization {
  double kappa0;
  double kappa1_coeff;
};

CurvatureLinearization curvature_linearization(int l, double R);

/// (1 - (R0/R)^{2l}) / (1 + (R0/R)^{2l}) = tanh(l ln(R/R0)).
double necrosis_I(int l, double R0, double R);
/// 1 - necrosis_I = 2 (R0/R)^{2l} / (1 + (R0/R)^{2l}). necrosis_I rounds to 1
/// once (R0/R)^{2l} drops below machine epsilon; the complement keeps its order.
double necrosis_I_complement(int l, double R0, double R);
/// 2 / ((R/R0)^{l+1} + (R0/R)^{l-1}), evaluated through exponents of logs.
double necrosis_II(int l, double R0, double R);

struct BifurcationTerms {
  double necrosis_I;
  double necrosis_II;
  double surface_tension;       ///< g_inv (l^2 - 1) / R^2
  double chemotaxis;            ///< chi (Q_l(R) + sigma_s'(R))
  double nutrient_at_boundary;  ///< sigma_s(R)
  double apoptosis_term;        ///< A
  double lambda_term;           ///< Q_l'(R) - (l/R) necrosis_I Q_l(R) - necrosis_II Q_l'(R0)
  double lambda_q_outer;        ///< Q_l'(R)
  double lambda_necrosis_I;     ///< -(l/R) necrosis_I Q_l(R)
  double lambda_necrosis_II;    ///< -necrosis_II Q_l'(R0) (dropped for l = 0)
};

/// Linear-in-P form of the bifurcation function: F(P) = L1 - P L2.
struct BifurcationResult {
  int l;
  double p_l;
  double L1;
  double L2;
  /// P_l from a second grouping of the same terms.
  double p_l_regrouped;
  /// Surface tension contributes nothing for l = 1.
  bool translation_mode;
  BifurcationTerms terms;
};

/// F(P) evaluated two ways: directly from the first-order pressure,
///   P (A - sigma_s(R) - Q_l'(R)) + l D1 R^{l-1} - l D2 R^{-l-1},
/// and as L1 - P L2.
struct BifurcationPaths {
  double direct;
  double linear;
  double L1;
  double L2;
};

BifurcationPaths bifurcation_function_paths(const SteadyState& s, int l, double prolif);
/// The direct form of F(P).
double bifurcation_function(const SteadyState& s, int l, double prolif);

/// P_l = L1 / L2. Throws DegenerateDenominator when |L2| <= 1e-14 |L1|.
BifurcationResult bifurcation_point(const SteadyState& s, int l);

/// beta -> infinity, R0 -> 0 limit of P_l; independent of chi.
double limit_bifurcation_point(int l, double R, double g_inv);

struct MonotonicityRow {
  double chi;
  std::vector<int> l;
  std::vector<double> p_l;       ///< NaN where the denominator degenerates
  std::vector<BifurcationResult> results;
  std::vector<bool> degenerate;
  bool monotone;
  int first_descent;  ///< first l with P_l <= P_{l-1}; -1 when monotone
};

/// Sequences {P_l} for l in [l_lo, l_hi] at each chi. Rows come back in the
/// order of chi_values regardless of scheduling.
std::vector<MonotonicityRow> monotonicity_scan(const ModelParams& p, int l_lo, int l_hi,
                                               const std::vector<double>& chi_values, int jobs = 1);

/// Whether {v} is strictly increasing; reports the first offending index.
bool strictly_increasing(const std::vector<double>& v, int* first_descent = nullptr);

struct L2Record {
  double shell_eps;
  double R0;
  double assumption_gap;  ///< sigma_s(R) - A
  bool assumption_violated;  ///< scan skipped when set
  std::vector<double> L2;  ///< l = 1..16
  bool positive;
  bool increasing;
  int violated_l;  ///< first l breaking positivity or monotonicity, -1 if none
  double max_deviation;  ///< max_l |L2 - (sigma_s(R) - A)|
  double relative_deviation;  ///< max_deviation / (sigma_s(R) - A)
};

/// R0 = R - shell_eps; throws AssumptionViolated when sigma_s(R) - A <= 0.
L2Record l2_positivity_at(const ModelParams& p, double shell_eps, int l_max = 16);

/// One record per shell_eps. Violations of the assumption are recorded and
/// the scan for that shell is skipped.
std::vector<L2Record> l2_positivity_check(const ModelParams& p, const std::vector<double>& eps_values,
                                          int l_max = 16);

/// Least-squares slope of log(deviation) against log(shell_eps), using the
/// absolute or the relative deviation.
double deviation_order(const std::vector<L2Record>& records, bool relative = false);

}  // namespace necrobifurc
