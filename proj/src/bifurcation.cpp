#include "necrobifurc/bifurcation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "necrobifurc/bessel.hpp"
#include "necrobifurc/errors.hpp"
#include "necrobifurc/parallel.hpp"

namespace necrobifurc {

CurvatureLinearization curvature_linearization(int l, double R) {
  require_domain(R > 0.0, "curvature needs R > 0");
  return {1.0 / R, (static_cast<double>(l) * l - 1.0) / (R * R)};
}

double necrosis_I(int l, double R0, double R) {
  require_domain(R0 > 0.0 && R > R0, "necrosis terms need 0 < R0 < R");
  return std::tanh(l * std::log(R / R0));
}

double necrosis_I_complement(int l, double R0, double R) {
  require_domain(R0 > 0.0 && R > R0, "necrosis terms need 0 < R0 < R");
  const double x2l = std::exp(2.0 * l * std::log(R0 / R));
  return 2.0 * x2l / (1.0 + x2l);
}

double necrosis_II(int l, double R0, double R) {
  require_domain(R0 > 0.0 && R > R0, "necrosis terms need 0 < R0 < R");
  const double lx = std::log(R0 / R);
  return 2.0 * std::exp((l + 1.0) * lx) / (1.0 + std::exp(2.0 * l * lx));
}

namespace {

struct Pieces {
  double sigma_R;
  double dsigma_R;
  double q_R;
  double dq_R;
  double dq_R0;
};

Pieces pieces(const SteadyState& s, const ModeSolution& m) {
  const ModelParams& p = s.params();
  const SigmaValue sR = s.sigma(p.R);
  const RadialValue qR = m.q(p.R);
  return {sR.value, sR.deriv, qR.value, qR.deriv, m.q(p.R0).deriv};
}

BifurcationTerms make_terms(const SteadyState& s, int l, const Pieces& pc) {
  const ModelParams& p = s.params();
  BifurcationTerms t;
  t.necrosis_I = necrosis_I(l, p.R0, p.R);
  t.necrosis_II = necrosis_II(l, p.R0, p.R);
  t.surface_tension = p.g_inv * (static_cast<double>(l) * l - 1.0) / (p.R * p.R);
  t.chemotaxis = p.chi * (pc.q_R + pc.dsigma_R);
  t.nutrient_at_boundary = pc.sigma_R;
  t.apoptosis_term = s.apopt();
  t.lambda_q_outer = pc.dq_R;
  t.lambda_necrosis_I = -(l / p.R) * t.necrosis_I * pc.q_R;
  // The constant l = 0 harmonic carries no inner flux.
  t.lambda_necrosis_II = l == 0 ? 0.0 : -t.necrosis_II * pc.dq_R0;
  t.lambda_term = t.lambda_q_outer + t.lambda_necrosis_I + t.lambda_necrosis_II;
  return t;
}

double linear_L1(const ModelParams& p, int l, const BifurcationTerms& t) {
  return (l / p.R) * t.necrosis_I * (t.surface_tension - t.chemotaxis);
}

double linear_L2(const BifurcationTerms& t) {
  return t.nutrient_at_boundary - t.apoptosis_term + t.lambda_term;
}

}  // namespace

BifurcationPaths bifurcation_function_paths(const SteadyState& s, int l, double prolif) {
  require_domain(l >= 0, "mode index must be non-negative");
  const ModelParams& p = s.params();
  const ModeSolution m(s, l);
  const Pieces pc = pieces(s, m);
  const BifurcationTerms t = make_terms(s, l, pc);
  BifurcationPaths out;
  out.L1 = linear_L1(p, l, t);
  out.L2 = linear_L2(t);
  out.linear = out.L1 - prolif * out.L2;
  double harmonic_flux = 0.0;
  if (l >= 1) {
    const HarmonicCoefficients h = harmonic_coefficients(m, prolif);
    harmonic_flux = h.eval(p.R).deriv;
  }
  out.direct = prolif * (s.apopt() - pc.sigma_R - pc.dq_R) + harmonic_flux;
  return out;
}

double bifurcation_function(const SteadyState& s, int l, double prolif) {
  return bifurcation_function_paths(s, l, prolif).direct;
}

BifurcationResult bifurcation_point(const SteadyState& s, int l) {
  require_domain(l >= 0, "mode index must be non-negative");
  const ModelParams& p = s.params();
  const ModeSolution m(s, l);
  const Pieces pc = pieces(s, m);
  BifurcationResult out;
  out.l = l;
  out.terms = make_terms(s, l, pc);
  out.translation_mode = l == 1;
  out.L1 = linear_L1(p, l, out.terms);
  out.L2 = linear_L2(out.terms);
  if (out.L2 == 0.0 || std::abs(out.L2) <= 1e-14 * std::abs(out.L1)) {
    std::ostringstream os;
    os.precision(17);
    os << "L2 = " << out.L2 << " against L1 = " << out.L1 << " at l = " << l;
    throw_error(ErrorCode::DegenerateDenominator, os.str());
  }
  out.p_l = out.L1 == 0.0 ? 0.0 : out.L1 / out.L2;

  const BifurcationTerms& t = out.terms;
  const double k = (l / p.R) * t.necrosis_I;
  const double num = k * t.surface_tension - k * t.chemotaxis;
  const double den = (t.nutrient_at_boundary + t.lambda_q_outer) -
                     (t.apoptosis_term - t.lambda_necrosis_I - t.lambda_necrosis_II);
  out.p_l_regrouped = num == 0.0 ? 0.0 : num / den;
  return out;
}

double limit_bifurcation_point(int l, double R, double g_inv) {
  require_domain(l >= 0, "mode index must be non-negative");
  require_domain(R > 0.0, "R must be positive");
  const double num = g_inv * (static_cast<double>(l) * l * l - l) / (R * R * R);
  if (num == 0.0) return 0.0;
  const double q = bessel::besseli_ratio(0, R);
  const double den = 1.0 - 2.0 / R * q - q * bessel::besseli_ratio(l, R);
  if (std::abs(den) <= 1e-14 * std::abs(num)) {
    std::ostringstream os;
    os.precision(17);
    os << "limit denominator " << den << " at l = " << l << ", R = " << R;
    throw_error(ErrorCode::DegenerateDenominator, os.str());
  }
  return num / den;
}

bool strictly_increasing(const std::vector<double>& v, int* first_descent) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) {
      if (first_descent) *first_descent = static_cast<int>(i);
      return false;
    }
  }
  if (first_descent) *first_descent = -1;
  return true;
}

std::vector<MonotonicityRow> monotonicity_scan(const ModelParams& p, int l_lo, int l_hi,
                                               const std::vector<double>& chi_values, int jobs) {
  require_domain(l_lo >= 0 && l_hi >= l_lo && l_hi <= 64, "l range must satisfy 0 <= l_lo <= l_hi <= 64");
  std::vector<MonotonicityRow> rows(chi_values.size());
  parallel_for(chi_values.size(), jobs, [&](std::size_t i) {
    ModelParams q = p;
    q.chi = chi_values[i];
    const SteadyState s(q);
    MonotonicityRow& row = rows[i];
    row.chi = q.chi;
    for (int l = l_lo; l <= l_hi; ++l) {
      row.l.push_back(l);
      try {
        row.results.push_back(bifurcation_point(s, l));
        row.p_l.push_back(row.results.back().p_l);
        row.degenerate.push_back(false);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateDenominator) throw;
        BifurcationResult r{};
        r.l = l;
        r.p_l = std::numeric_limits<double>::quiet_NaN();
        row.results.push_back(r);
        row.p_l.push_back(r.p_l);
        row.degenerate.push_back(true);
      }
    }
    int first = -1;
    row.monotone = strictly_increasing(row.p_l, &first);
    row.first_descent = first < 0 ? -1 : row.l[first];
  });
  return rows;
}

L2Record l2_positivity_at(const ModelParams& p, double shell_eps, int l_max) {
  require_domain(shell_eps > 0.0 && shell_eps < p.R, "shell_eps must lie in (0, R)");
  require_domain(l_max >= 1, "l_max must be at least 1");
  ModelParams q = p;
  q.R0 = p.R - shell_eps;
  const SteadyState s(q);
  L2Record rec;
  rec.shell_eps = shell_eps;
  rec.R0 = q.R0;
  rec.assumption_gap = s.sigma(q.R).value - s.apopt();
  rec.assumption_violated = !(rec.assumption_gap > 0.0);
  rec.positive = false;
  rec.increasing = false;
  rec.violated_l = -1;
  rec.max_deviation = 0.0;
  rec.relative_deviation = 0.0;
  if (rec.assumption_violated) {
    std::ostringstream os;
    os.precision(17);
    os << "sigma_s(R) - A = " << rec.assumption_gap << " <= 0 at shell_eps = " << shell_eps;
    throw_error(ErrorCode::AssumptionViolated, os.str());
  }
  for (int l = 1; l <= l_max; ++l) {
    const BifurcationPaths f = bifurcation_function_paths(s, l, 0.0);
    rec.L2.push_back(f.L2);
    rec.max_deviation = std::max(rec.max_deviation, std::abs(f.L2 - rec.assumption_gap));
  }
  rec.relative_deviation = rec.max_deviation / rec.assumption_gap;
  rec.positive = true;
  for (int l = 1; l <= l_max; ++l) {
    if (!(rec.L2[l - 1] > 0.0)) {
      rec.positive = false;
      rec.violated_l = l;
      break;
    }
  }
  int first = -1;
  rec.increasing = strictly_increasing(rec.L2, &first);
  if (rec.violated_l < 0 && first >= 0) rec.violated_l = first + 1;
  return rec;
}

std::vector<L2Record> l2_positivity_check(const ModelParams& p, const std::vector<double>& eps_values, int l_max) {
  std::vector<L2Record> out;
  for (double eps : eps_values) {
    try {
      out.push_back(l2_positivity_at(p, eps, l_max));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AssumptionViolated) throw;
      ModelParams q = p;
      q.R0 = p.R - eps;
      const SteadyState s(q);
      L2Record rec{};
      rec.shell_eps = eps;
      rec.R0 = q.R0;
      rec.assumption_gap = s.sigma(q.R).value - s.apopt();
      rec.assumption_violated = true;
      rec.violated_l = -1;
      out.push_back(rec);
    }
  }
  return out;
}

double deviation_order(const std::vector<L2Record>& records, bool relative) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& r : records) {
    if (r.assumption_violated || !(r.max_deviation > 0.0)) continue;
    const double x = std::log(r.shell_eps);
    const double y = std::log(relative ? r.relative_deviation : r.max_deviation);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace necrobifurc
