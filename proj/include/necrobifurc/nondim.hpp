#pragma once

#include "necrobifurc/params.hpp"

namespace necrobifurc {

/// Model parameters before scaling. Units are the caller's responsibility;
/// only consistency between them matters.
struct DimensionalParams {
  double D = 1.0;              ///< nutrient diffusivity
  double lambda = 1.0;         ///< nutrient consumption rate
  double lambda_M = 1.0;       ///< mitosis rate
  double lambda_A = 0.5;       ///< apoptosis rate
  double mu = 1.0;             ///< cell mobility
  double gamma = 1.0;          ///< cell-cell adhesion
  double chi_sigma_dim = 1.0;  ///< chemotaxis coefficient
  double chi_bar = 1.0;        ///< characteristic chemotaxis coefficient
  double sigma_inf = 1.0;      ///< far-field nutrient level
  double sigma_N = 0.5;        ///< nutrient level on the necrotic boundary
  double beta_dim = 1.0;       ///< nutrient supply rate (1/length)
  double R0_dim = 0.5;
  double R_dim = 2.0;
};

struct NondimDiagnostics {
  double L = 0.0;           ///< diffusion length sqrt(D / lambda)
  double lambda_chi = 0.0;  ///< taxis rate chi_bar sigma_inf / L^2
  double p_scale = 0.0;     ///< characteristic pressure lambda_chi L^2 / mu
  double eps = 0.0;         ///< lambda_chi / lambda
  bool quasi_steady_warning = false;  ///< eps >= 0.1
  /// Reference time-scale ratios quoted for physiological tumours:
  /// 1 min diffusion over 1.25 h taxis, and the rounded 1 min / 1 h.
  double reference_eps_taxis_estimate = 1.0 / 75.0;
  double reference_eps_rounded = 1.0 / 60.0;
};

struct NondimResult {
  ModelParams params;
  NondimDiagnostics diagnostics;
};

inline constexpr double kQuasiSteadyThreshold = 0.1;

/// Scale dimensional parameters. The resulting bundle carries
/// A = lambda_A / lambda_M as a prescribed apoptosis rate.
NondimResult nondimensionalize(const DimensionalParams& d);

}  // namespace necrobifurc
