#include "necrobifurc/nondim.hpp"

#include <cmath>
#include <sstream>

#include "necrobifurc/errors.hpp"

namespace necrobifurc {

void validate(const ModelParams& p) {
  require_domain(std::isfinite(p.R0) && std::isfinite(p.R), "radii must be finite");
  require_domain(p.R0 > 0.0, "R0 must be positive");
  require_domain(p.R > p.R0, "R must exceed R0");
  require_domain(p.beta >= 0.0 && std::isfinite(p.beta), "beta must be finite and non-negative");
  require_domain(p.sigma_ul >= 0.0 && p.sigma_ul < 1.0, "sigma_ul must lie in [0, 1)");
  require_domain(p.g_inv >= 0.0 && std::isfinite(p.g_inv), "g_inv must be finite and non-negative");
  require_domain(p.chi >= 0.0 && std::isfinite(p.chi), "chi must be finite and non-negative");
  require_domain(std::isfinite(p.prolif), "prolif must be finite");
}

std::string describe(const ModelParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "beta=" << p.beta << " sigma_ul=" << p.sigma_ul << " R0=" << p.R0 << " R=" << p.R
     << " chi=" << p.chi << " g_inv=" << p.g_inv << " prolif=" << p.prolif;
  return os.str();
}

NondimResult nondimensionalize(const DimensionalParams& d) {
  const auto positive = [](double v, const char* name) {
    require_domain(std::isfinite(v) && v > 0.0, std::string(name) + " must be strictly positive");
  };
  positive(d.D, "D");
  positive(d.lambda, "lambda");
  positive(d.lambda_M, "lambda_M");
  positive(d.lambda_A, "lambda_A");
  positive(d.mu, "mu");
  positive(d.gamma, "gamma");
  positive(d.chi_bar, "chi_bar");
  positive(d.sigma_inf, "sigma_inf");
  positive(d.beta_dim, "beta_dim");
  positive(d.R0_dim, "R0_dim");
  positive(d.R_dim, "R_dim");
  require_domain(d.chi_sigma_dim >= 0.0, "chi_sigma_dim must be non-negative");
  require_domain(d.sigma_N >= 0.0 && d.sigma_N < d.sigma_inf, "need 0 <= sigma_N < sigma_inf");
  require_domain(d.R_dim > d.R0_dim, "R_dim must exceed R0_dim");

  NondimResult out;
  NondimDiagnostics& diag = out.diagnostics;
  diag.L = std::sqrt(d.D / d.lambda);
  diag.lambda_chi = d.chi_bar * d.sigma_inf / (diag.L * diag.L);
  diag.p_scale = diag.lambda_chi * diag.L * diag.L / d.mu;
  diag.eps = diag.lambda_chi / d.lambda;
  diag.quasi_steady_warning = diag.eps >= kQuasiSteadyThreshold;

  ModelParams& p = out.params;
  p.beta = diag.L * d.beta_dim;
  p.sigma_ul = d.sigma_N / d.sigma_inf;
  p.R0 = d.R0_dim / diag.L;
  p.R = d.R_dim / diag.L;
  p.chi = d.chi_sigma_dim / d.chi_bar;
  p.g_inv = d.mu * d.gamma / (diag.lambda_chi * diag.L * diag.L * diag.L);
  p.prolif = d.lambda_M / diag.lambda_chi;
  p.apopt = d.lambda_A / d.lambda_M;
  p.apopt_source = ApoptosisSource::Prescribed;
  return out;
}

}  // namespace necrobifurc
