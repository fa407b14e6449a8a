#pragma once

#include <string>

namespace necrobifurc {

/// Where the apoptosis rate of a parameter bundle came from.
enum class ApoptosisSource {
  /// Fixed by the steady-state flux balance for the given geometry.
  FromGeometry,
  /// Supplied by the caller (e.g. lambda_A / lambda_M); the outer radius was
  /// then solved to match it.
  Prescribed,
};

/// Dimensionless parameter bundle shared by every analysis.
struct ModelParams {
  double beta = 1.0;      ///< nutrient supply rate across the tumour boundary
  double sigma_ul = 0.5;  ///< necrotic-boundary nutrient level sigma^N / sigma^inf
  double R0 = 0.5;        ///< necrotic core radius
  double R = 2.0;         ///< tumour radius
  double chi = 1.0;       ///< chemotaxis coefficient
  double g_inv = 1.0;     ///< surface tension strength G^{-1}
  double prolif = 1.0;    ///< proliferation rate P
  double apopt = 0.0;     ///< apoptosis rate A (meaningful when source == Prescribed)
  ApoptosisSource apopt_source = ApoptosisSource::FromGeometry;
};

/// Throws a Domain error when the bundle violates 0 < R0 < R, beta >= 0,
/// 0 <= sigma_ul < 1, g_inv >= 0 or chi >= 0.
void validate(const ModelParams& p);

std::string describe(const ModelParams& p);

}  // namespace necrobifurc
