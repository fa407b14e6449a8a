#include "necrobifurc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "necrobifurc/bessel.hpp"
#include "necrobifurc/bifurcation.hpp"
#include "necrobifurc/errors.hpp"
#include "necrobifurc/linear_modes.hpp"
#include "necrobifurc/necrobifurc.h"
#include "necrobifurc/oracle.hpp"
#include "necrobifurc/parallel.hpp"
#include "necrobifurc/steady_state.hpp"

namespace necrobifurc::verify {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxMessages = 8;

// Thread-safe pass/fail tally for one suite.
class Tally {
 public:
  explicit Tally(SuiteResult& r) : r_(r) {}

  bool check(bool ok, const std::function<std::string()>& what) {
    std::lock_guard<std::mutex> lock(m_);
    ++r_.checks;
    if (!ok) {
      ++r_.failures;
      r_.passed = false;
      if (r_.messages.size() < kMaxMessages) r_.messages.push_back(what());
    }
    return ok;
  }

 private:
  SuiteResult& r_;
  std::mutex m_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double rel(double a, double b, double scale) { return std::abs(a - b) / std::max(scale, 1e-300); }

ModelParams limit_params(const ModelParams& base, double R) {
  ModelParams q = base;
  q.R = R;
  q.beta = 1e6;
  q.R0 = 1e-4;
  q.sigma_ul = bessel::besseli(0, q.R0) / bessel::besseli(0, R);
  return q;
}

void suite_bessel(const Options& opt, SuiteResult& res) {
  Tally t(res);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> pick_n(0, 16);
  std::uniform_real_distribution<double> pick_lx(std::log(1e-3), std::log(50.0));
  const double tol = opt.self_test_negative ? 0.0 : 1e-11;
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = pick_n(rng);
    const double x = std::exp(pick_lx(rng));
    using namespace bessel;
    const double in = besseli(n, x), kn = besselk(n, x);
    const double ip = besseli(n + 1, x), kp = besselk(n + 1, x);
    const double im = besseli(n == 0 ? 1 : n - 1, x), km = besselk(n == 0 ? 1 : n - 1, x);
    const auto [di, dk] = bessel_derivs(n, x);
    auto where = [&] { return "n=" + std::to_string(n) + " x=" + fmt(x); };
    t.check(in > 0 && kn > 0 && di > 0 && dk < 0, [&] { return "sign violation at " + where(); });
    // I_{n+1} = I_{n-1} - (2n/x) I_n and K_{n+1} = K_{n-1} + (2n/x) K_n.
    const double ri = rel(ip, im - (2.0 * n / x) * in, im);
    const double rk = rel(kp, km + (2.0 * n / x) * kn, kp);
    // I_n' = I_{n-1} - (n/x) I_n, K_n' = -K_{n-1} - (n/x) K_n, checked against
    // the companion forms I_{n+1} + (n/x) I_n and -K_{n+1} + (n/x) K_n.
    const double ti = (n / x) * in;
    const double tk = (n / x) * kn;
    const double rdi = rel(im - ti, ip + ti, std::max(im, ti));
    const double rdk = rel(-km - tk, -kp + tk, std::max(kp, tk));
    const double rdi2 = rel(di, im - ti, std::max(im, ti));
    const double rdk2 = rel(dk, -km - tk, std::max(km, tk));
    const double rw = std::abs(x * (in * kp + ip * kn) - 1.0);
    for (double r : {ri, rk, rdi, rdk, rdi2, rdk2, rw}) worst = std::max(worst, r);
    t.check(ri <= tol, [&] { return "I recurrence residual " + fmt(ri) + " at " + where(); });
    t.check(rk <= tol, [&] { return "K recurrence residual " + fmt(rk) + " at " + where(); });
    t.check(rdi <= tol && rdi2 <= tol, [&] { return "I' forms disagree by " + fmt(std::max(rdi, rdi2)) + " at " + where(); });
    t.check(rdk <= tol && rdk2 <= tol, [&] { return "K' forms disagree by " + fmt(std::max(rdk, rdk2)) + " at " + where(); });
    t.check(rw <= tol, [&] { return "Wronskian residual " + fmt(rw) + " at " + where(); });
  }
  res.detail["samples"] = 200;
  res.detail["tolerance"] = tol;
  res.detail["worst_relative_residual"] = worst;
}

void suite_oracle(const Options& opt, SuiteResult& res) {
  Tally t(res);
  std::mt19937_64 rng(opt.seed + 1);
  std::vector<ModelParams> sets;
  for (int k = 0; k < opt.oracle_sets; ++k) sets.push_back(draw_params(rng));
  std::vector<json> rows(sets.size());
  double worst_err = 0.0, min_order = 10.0, max_order = 0.0;
  std::mutex m;
  parallel_for(sets.size(), opt.jobs, [&](std::size_t i) {
    const ModelParams& p = sets[i];
    std::vector<oracle::Comparison> cs = oracle::steady_comparisons(p, opt.oracle_n);
    for (int l : {0, 2, 5}) cs.push_back(oracle::mode_comparison(p, l, opt.oracle_n));
    json list = json::array();
    for (const auto& c : cs) {
      t.check(c.max_rel_err <= 1e-6, [&] { return c.quantity + " error " + fmt(c.max_rel_err) + " for " + describe(p); });
      t.check(c.conv_order >= 1.7 && c.conv_order <= 2.3,
              [&] { return c.quantity + " order " + fmt(c.conv_order) + " for " + describe(p); });
      list.push_back({{"quantity", c.quantity}, {"grid_n", c.grid_n}, {"max_rel_err", c.max_rel_err}, {"conv_order", c.conv_order}});
      std::lock_guard<std::mutex> lock(m);
      worst_err = std::max(worst_err, c.max_rel_err);
      min_order = std::min(min_order, c.conv_order);
      max_order = std::max(max_order, c.conv_order);
    }
    rows[i] = {{"params", describe(p)}, {"comparisons", list}};
  });
  res.detail["grid_n"] = opt.oracle_n;
  res.detail["parameter_sets"] = rows;
  res.detail["worst_rel_err"] = worst_err;
  res.detail["order_range"] = {min_order, max_order};
}

void suite_nutrient(const Options& opt, SuiteResult& res) {
  Tally t(res);
  constexpr double slack = 1e-12;
  for (double beta : opt.betas) {
    ModelParams p = opt.base;
    p.beta = beta;
    const SteadyState s(p);
    for (int i = 0; i <= 1000; ++i) {
      const double r = std::min(p.R, p.R0 + (p.R - p.R0) * i / 1000.0);
      const EFValue e = s.ef(r);
      auto where = [&] { return "beta=" + fmt(beta) + " r=" + fmt(r); };
      t.check(e.E >= -slack && e.E <= 1 + slack, [&] { return "E out of [0,1]: " + fmt(e.E) + " at " + where(); });
      t.check(e.F >= -slack && e.F <= 1 + slack, [&] { return "F out of [0,1]: " + fmt(e.F) + " at " + where(); });
      t.check(e.dE <= slack, [&] { return "E' positive: " + fmt(e.dE) + " at " + where(); });
      t.check(e.dF >= -slack, [&] { return "F' negative: " + fmt(e.dF) + " at " + where(); });
    }
    const EFValue e0 = s.ef(p.R0);
    t.check(std::abs(e0.E - 1.0) <= 1e-14 && e0.F == 0.0, [&] { return "E(R0) != 1 or F(R0) != 0"; });
  }
  std::mt19937_64 rng(opt.seed + 2);
  std::vector<ModelParams> draws;
  for (int k = 0; k < opt.random_draws; ++k) draws.push_back(draw_params(rng));
  double lo = 1.0, hi = 0.0, amin = std::numeric_limits<double>::infinity();
  std::mutex m;
  parallel_for(draws.size(), opt.jobs, [&](std::size_t k) {
    const ModelParams& p = draws[k];
    const SteadyState s(p);
    double dlo = 1.0, dhi = 0.0, prev = -std::numeric_limits<double>::infinity();
    bool monotone = true;
    constexpr int kPoints = 10000;
    for (int i = 0; i < kPoints; ++i) {
      const double r = std::min(p.R, p.R0 + (p.R - p.R0) * i / (kPoints - 1.0));
      const SigmaValue v = s.sigma(r);
      dlo = std::min(dlo, v.value);
      dhi = std::max(dhi, v.value);
      const double f = r * v.deriv;
      if (f < prev - slack * std::max(1.0, std::abs(f))) monotone = false;
      prev = f;
    }
    t.check(dlo >= -slack && dhi <= 1 + slack, [&] { return "sigma range [" + fmt(dlo) + ", " + fmt(dhi) + "] for " + describe(p); });
    t.check(s.apopt() >= 0.0, [&] { return "negative apoptosis rate " + fmt(s.apopt()) + " for " + describe(p); });
    t.check(monotone, [&] { return "r sigma' decreases for " + describe(p); });
    std::lock_guard<std::mutex> lock(m);
    lo = std::min(lo, dlo);
    hi = std::max(hi, dhi);
    amin = std::min(amin, s.apopt());
  });
  res.detail["betas"] = opt.betas;
  res.detail["draws"] = opt.random_draws;
  res.detail["sigma_range"] = {lo, hi};
  res.detail["min_apopt"] = amin;
}

void suite_g_beta(const Options& opt, SuiteResult& res) {
  Tally t(res);
  const double tiny = 4.0 * std::numeric_limits<double>::epsilon();
  json rows = json::array();
  for (double beta : opt.betas) {
    ModelParams p = opt.base;
    p.beta = beta;
    const SteadyState s(p);
    const ModeSolution m(s, opt.l);
    const double G0R = m.g_beta(p.R).G0;
    double gmax = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double r = std::min(p.R, p.R0 + (p.R - p.R0) * i / 1000.0);
      const GBetaValue g = m.g_beta(r);
      const double pw = std::exp(opt.l * std::log(r / p.R));
      auto where = [&] { return "beta=" + fmt(beta) + " l=" + std::to_string(opt.l) + " r=" + fmt(r); };
      t.check(g.dG >= 0.0, [&] { return "G' negative at " + where(); });
      t.check(g.G >= 0.0, [&] { return "G negative at " + where(); });
      t.check(g.G <= std::min(G0R, 1.0 / beta) * (1 + tiny), [&] { return "G above min(G0(R), 1/beta) at " + where(); });
      t.check(g.G <= std::min(g.G0, pw / beta) * (1 + tiny), [&] { return "G above min(G0(r), (r/R)^l/beta) at " + where(); });
      gmax = std::max(gmax, g.G);
    }
    const GBetaValue gR = m.g_beta(p.R);
    t.check(std::abs(gR.Ginf - 1.0) <= 1e-14, [&] { return "G_inf(R) != 1"; });
    t.check(m.g_beta(p.R0).G == 0.0, [&] { return "G(R0) != 0"; });
    rows.push_back({{"beta", beta}, {"max_G", gmax}, {"G0_at_R", G0R}});
  }
  res.detail["l"] = opt.l;
  res.detail["profiles"] = rows;
}

void suite_sequences(const Options& opt, SuiteResult& res) {
  Tally t(res);
  std::mt19937_64 rng(opt.seed + 3);
  for (int k = 0; k < opt.sequence_sets; ++k) {
    const ModelParams p = draw_params(rng);
    const SteadyState s(p);
    for (int j = 1; j <= 5; ++j) {
      const double r = std::min(p.R, p.R0 + (p.R - p.R0) * j / 5.0);
      const auto a = a_l_sequence(s, r, 16);
      int first = -1;
      const bool pos = std::all_of(a.begin(), a.end(), [](double v) { return v > 0.0; });
      std::vector<double> neg(a.size());
      std::transform(a.begin(), a.end(), neg.begin(), [](double v) { return -v; });
      const bool dec = strictly_increasing(neg, &first);
      t.check(pos, [&] { return "a_l not positive at r=" + fmt(r) + " for " + describe(p); });
      t.check(dec, [&] { return "a_l not decreasing at l=" + std::to_string(first + 1) + " r=" + fmt(r) + " for " + describe(p); });
    }
    const BSequence b = b_l_sequence(s, 16);
    std::vector<double> neg(b.inner.size());
    std::transform(b.inner.begin(), b.inner.end(), neg.begin(), [](double v) { return -v; });
    t.check(std::all_of(b.inner.begin(), b.inner.end(), [](double v) { return v > 0; }) &&
                std::all_of(b.outer.begin(), b.outer.end(), [](double v) { return v > 0; }),
            [&] { return "b_l not positive for " + describe(p); });
    t.check(strictly_increasing(neg), [&] { return "b_l(R0) not decreasing for " + describe(p); });
    t.check(strictly_increasing(b.outer), [&] { return "b_l(R) not increasing for " + describe(p); });
  }
  res.detail["parameter_sets"] = opt.sequence_sets;
  res.detail["l_max"] = 16;
}

void suite_bifurcation(const Options& opt, SuiteResult& res) {
  Tally t(res);
  std::mt19937_64 rng(opt.seed + 4);
  std::uniform_int_distribution<int> pick_l(0, 16);
  std::uniform_real_distribution<double> pick_P(0.0, 10.0);
  double worst = 0.0, worst_p0 = 0.0;
  for (int k = 0; k < opt.dual_path_draws; ++k) {
    const ModelParams p = draw_params(rng);
    const SteadyState s(p);
    const int l = pick_l(rng);
    const double P = pick_P(rng);
    const BifurcationPaths f = bifurcation_function_paths(s, l, P);
    const double scale = std::max({std::abs(f.direct), std::abs(f.L1), std::abs(P * f.L2)});
    const double r = std::abs(f.direct - f.linear) / scale;
    worst = std::max(worst, r);
    t.check(r <= 1e-10, [&] { return "dual path mismatch " + fmt(r) + " at l=" + std::to_string(l) + " for " + describe(p); });
    const double p0 = bifurcation_point(s, 0).p_l;
    worst_p0 = std::max(worst_p0, std::abs(p0));
    t.check(std::abs(p0) <= 1e-12, [&] { return "P_0 = " + fmt(p0) + " for " + describe(p); });
    for (int m = 1; m <= 32; ++m) {
      const double c = necrosis_I_complement(m, p.R0, p.R);
      const double n2 = necrosis_II(m, p.R0, p.R);
      t.check(c > 0.0 && c < 1.0 && n2 > 0.0 && n2 < 1.0, [&] { return "necrosis factor out of (0,1) at l=" + std::to_string(m); });
      if (m > 1) {
        t.check(c < necrosis_I_complement(m - 1, p.R0, p.R) && necrosis_I(m, p.R0, p.R) >= necrosis_I(m - 1, p.R0, p.R),
                [&] { return "necrosis_I not increasing at l=" + std::to_string(m) + " for " + describe(p); });
        t.check(n2 < necrosis_II(m - 1, p.R0, p.R), [&] { return "necrosis_II not decreasing at l=" + std::to_string(m); });
      }
    }
    for (int m : {2, 3, 7}) {
      const BifurcationResult b = bifurcation_point(s, m);
      const double g = std::abs(b.p_l - b.p_l_regrouped) / std::abs(b.p_l);
      t.check(g <= 1e-12, [&] { return "regrouped P_l differs by " + fmt(g) + " for " + describe(p); });
    }
  }
  res.detail["draws"] = opt.dual_path_draws;
  res.detail["worst_dual_path_rel"] = worst;
  res.detail["worst_abs_P0"] = worst_p0;
}

void suite_limits(const Options& opt, SuiteResult& res) {
  Tally t(res);
  const double R = 2.0;
  ModelParams base = opt.base;
  base.g_inv = 1.0;
  const ModelParams q = limit_params(base, R);
  const SteadyState s(q);
  json rows = json::array();
  for (int l = 2; l <= 8; ++l) {
    const double lim = limit_bifurcation_point(l, R, 1.0);
    const double full = bifurcation_point(s, l).p_l;
    const double err = std::abs(full - lim) / lim;
    const ModeSolution m(s, l);
    const double chem = std::abs(m.q(R).value + s.sigma(R).deriv);
    t.check(err <= 1e-3, [&] { return "P_" + std::to_string(l) + " limit error " + fmt(err); });
    t.check(chem <= 1e-3, [&] { return "|Q_l(R) + sigma'(R)| = " + fmt(chem) + " at l=" + std::to_string(l); });
    rows.push_back({{"l", l}, {"P_l", full}, {"P_l_limit", lim}, {"rel_err", err}, {"q_plus_dsigma", chem}});
  }
  // Same regime with the inner value held at the base sigma_ul, for reference:
  // the R0 -> 0 approach is only logarithmic in R0 unless the inner data matches.
  ModelParams raw = q;
  raw.sigma_ul = opt.base.sigma_ul;
  const SteadyState sr(raw);
  double raw_err = 0.0;
  for (int l = 2; l <= 8; ++l) {
    const double lim = limit_bifurcation_point(l, R, 1.0);
    raw_err = std::max(raw_err, std::abs(bifurcation_point(sr, l).p_l - lim) / lim);
  }
  res.detail["beta"] = q.beta;
  res.detail["R0"] = q.R0;
  res.detail["sigma_ul"] = q.sigma_ul;
  res.detail["rows"] = rows;
  res.detail["max_rel_err_with_base_sigma_ul"] = raw_err;
}

void suite_pressure_limit(const Options& opt, SuiteResult& res) {
  Tally t(res);
  ModelParams p = opt.base;
  if (p.prolif == p.chi) p.prolif = p.chi + 2.0;
  const PressureLimitResolution r = resolve_pressure_limit(p);
  t.check(r.i0_form_matches && r.err_i0_form <= 1e-3 && r.err_i0_form_deriv <= 1e-3,
          [&] { return "I0(r)/I0(R) pressure limit does not match: " + fmt(r.err_i0_form); });
  res.detail = {{"beta", r.beta},
                {"R0", r.R0},
                {"err_i0_form", r.err_i0_form},
                {"err_i1_form", r.err_i1_form},
                {"err_i0_form_deriv", r.err_i0_form_deriv},
                {"err_i1_form_deriv", r.err_i1_form_deriv},
                {"matching_form", r.i0_form_matches ? "I0(r)/I0(R)" : "I0(r)/I1(R)"}};
}

json scan_json(const std::vector<MonotonicityRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"chi", r.chi}, {"monotone", r.monotone}, {"first_descent", r.first_descent}, {"P_l", r.p_l}});
  }
  return out;
}

void suite_monotonicity(const Options& opt, SuiteResult& res) {
  Tally t(res);
  const std::vector<double> radii{1.5, 2.0, 3.0, 5.0};
  const std::vector<double> g_values{0.1, 1.0};
  json grid = json::array();
  bool found = false;
  double chosen_R = 0.0, chosen_g = 0.0;
  for (double R : radii) {
    for (double g : g_values) {
      ModelParams p = opt.base;
      p.beta = NBF_REORDER_SCAN_BETA;
      p.R0 = NBF_REORDER_SCAN_R0;
      p.R = R;
      p.g_inv = g;
      const auto rows = monotonicity_scan(p, 2, 16, {1.0, 100.0}, opt.jobs);
      const bool reproduces = rows[0].monotone && !rows[1].monotone;
      grid.push_back({{"R", R}, {"g_inv", g}, {"monotone_chi_1", rows[0].monotone},
                      {"monotone_chi_100", rows[1].monotone}, {"first_descent_chi_100", rows[1].first_descent}});
      if (reproduces && !found) {
        found = true;
        chosen_R = R;
        chosen_g = g;
      }
    }
  }
  t.check(found, [&] {
    return "no (R, g_inv) in the scanned grid loses monotonicity at chi=100 with beta=1e4, R0=1, sigma_ul=" +
           fmt(opt.base.sigma_ul);
  });
  if (!found) {
    chosen_R = NBF_REORDER_SCAN_R;
    chosen_g = NBF_REORDER_SCAN_G_INV;
  }
  std::vector<double> lim;
  for (int l = 2; l <= 16; ++l) lim.push_back(limit_bifurcation_point(l, chosen_R, chosen_g));
  t.check(strictly_increasing(lim), [&] { return "limiting curve not increasing at R=" + fmt(chosen_R); });
  res.detail["scan"] = grid;
  res.detail["reproduced"] = found;
  res.detail["recorded"] = {{"R", chosen_R}, {"g_inv", chosen_g}};
  res.detail["limit_curve"] = lim;
  // For contrast: a moderate supply rate where chi = 100 does reorder the modes.
  ModelParams demo = opt.base;
  demo.beta = 100.0;
  demo.R0 = 1.0;
  demo.R = 2.0;
  demo.g_inv = 0.1;
  const auto contrast = monotonicity_scan(demo, 2, 16, {1.0, 100.0}, opt.jobs);
  res.detail["contrast_beta_100"] = {{"R", 2.0}, {"g_inv", 0.1}, {"rows", scan_json(contrast)}};
}

void suite_l2(const Options& opt, SuiteResult& res) {
  Tally t(res);
  ModelParams p = opt.base;
  p.R = 2.0;
  std::vector<double> eps;
  for (double f : {0.1, 0.05, 0.025, 0.01}) eps.push_back(f * p.R);
  const auto recs = l2_positivity_check(p, eps);
  json rows = json::array();
  for (const auto& r : recs) {
    t.check(!r.assumption_violated, [&] { return "sigma_s(R) - A = " + fmt(r.assumption_gap) + " at shell_eps " + fmt(r.shell_eps); });
    rows.push_back({{"shell_eps", r.shell_eps}, {"gap", r.assumption_gap}, {"positive", r.positive},
                    {"increasing", r.increasing}, {"max_deviation", r.max_deviation},
                    {"relative_deviation", r.relative_deviation}});
  }
  const L2Record& last = recs.back();
  t.check(last.positive && last.increasing, [&] { return "L2 fails at l=" + std::to_string(last.violated_l); });
  const double abs_order = deviation_order(recs, false);
  const double rel_order = deviation_order(recs, true);
  t.check(abs_order >= 0.9, [&] { return "L2 - (sigma_s(R) - A) decays at order " + fmt(abs_order); });
  t.check(rel_order >= 0.8 && rel_order <= 1.3,
          [&] { return "relative deviation of L2 decays at order " + fmt(rel_order) + ", not linearly"; });
  res.detail["records"] = rows;
  res.detail["absolute_deviation_order"] = abs_order;
  res.detail["relative_deviation_order"] = rel_order;
}

void suite_expansion(const Options& opt, SuiteResult& res) {
  Tally t(res);
  const auto rep = oracle::expansion_check_2d(opt.base, 2, {0.02, 0.01}, opt.n_r, opt.n_theta);
  const double ratio = rep.ratio_second[0];
  t.check(ratio >= 3.0 && ratio <= 5.0, [&] { return "e(0.02)/e(0.01) = " + fmt(ratio); });
  t.check(rep.ratio_first[0] >= 1.7 && rep.ratio_first[0] <= 2.3,
          [&] { return "first-order-only ratio " + fmt(rep.ratio_first[0]); });
  t.check(rep.baseline_error <= 1e-6, [&] { return "eps = 0 discretisation error " + fmt(rep.baseline_error); });
  res.detail = {{"l", rep.l},
                {"n_r", rep.n_r},
                {"n_theta", rep.n_theta},
                {"eps", rep.eps},
                {"err_second", rep.err_second},
                {"err_first", rep.err_first},
                {"ratio_second", ratio},
                {"ratio_first", rep.ratio_first[0]},
                {"baseline_error", rep.baseline_error},
                {"baseline_subtracted", rep.baseline_subtracted}};
}

using SuiteFn = void (*)(const Options&, SuiteResult&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"bessel-identities", suite_bessel},
      {"oracle-agreement", suite_oracle},
      {"nutrient-bounds", suite_nutrient},
      {"g-beta-bounds", suite_g_beta},
      {"a-b-sequences", suite_sequences},
      {"bifurcation-identities", suite_bifurcation},
      {"limit-recovery", suite_limits},
      {"pressure-limit", suite_pressure_limit},
      {"monotonicity-loss", suite_monotonicity},
      {"l2-positivity", suite_l2},
      {"expansion-2d", suite_expansion},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

ModelParams draw_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams p;
  p.beta = std::pow(10.0, -1.0 + 2.0 * u(rng));
  p.sigma_ul = 0.9 * u(rng);
  p.R0 = 0.2 + 1.3 * u(rng);
  p.R = p.R0 + 0.5 + 2.5 * u(rng);
  p.chi = 3.0 * u(rng);
  p.g_inv = 0.1 + 1.9 * u(rng);
  p.prolif = 0.5 + 3.0 * u(rng);
  return p;
}

SuiteResult run_suite(const std::string& name, const Options& opt) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == name; });
  if (it == reg.end()) throw_error(ErrorCode::Misuse, "unknown suite '" + name + "'");
  SuiteResult res;
  res.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    it->second(opt, res);
  } catch (const Error& e) {
    res.passed = false;
    ++res.failures;
    res.messages.push_back(std::string("error: ") + e.what());
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

Report run(const Options& opt) {
  std::vector<std::string> names = opt.suites.empty() ? suite_names() : opt.suites;
  for (const auto& n : names) {
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end()) {
      throw_error(ErrorCode::Misuse, "unknown suite '" + n + "'");
    }
  }
  Report rep;
  for (const auto& n : names) {
    rep.suites.push_back(run_suite(n, opt));
    rep.passed = rep.passed && rep.suites.back().passed;
  }
  return rep;
}

json Report::to_json() const {
  json out;
  out["passed"] = passed;
  json list = json::array();
  for (const auto& s : suites) {
    list.push_back({{"name", s.name},
                    {"passed", s.passed},
                    {"checks", s.checks},
                    {"failures", s.failures},
                    {"seconds", s.seconds},
                    {"messages", s.messages},
                    {"detail", s.detail}});
  }
  out["suites"] = list;
  return out;
}

Options options_from_json(const json& j) {
  Options o;
  if (j.is_null()) return o;
  if (!j.is_object()) throw_error(ErrorCode::Misuse, "verify options must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") o.seed = v.get<std::uint64_t>();
      else if (key == "jobs") o.jobs = v.get<int>();
      else if (key == "suites") o.suites = v.get<std::vector<std::string>>();
      else if (key == "betas") o.betas = v.get<std::vector<double>>();
      else if (key == "l") o.l = v.get<int>();
      else if (key == "oracle_n") o.oracle_n = v.get<int>();
      else if (key == "oracle_sets") o.oracle_sets = v.get<int>();
      else if (key == "random_draws") o.random_draws = v.get<int>();
      else if (key == "dual_path_draws") o.dual_path_draws = v.get<int>();
      else if (key == "sequence_sets") o.sequence_sets = v.get<int>();
      else if (key == "n_r") o.n_r = v.get<int>();
      else if (key == "n_theta") o.n_theta = v.get<int>();
      else if (key == "self_test_negative") o.self_test_negative = v.get<bool>();
      else if (key == "params") {
        for (const auto& [pk, pv] : v.items()) {
          const double d = pv.get<double>();
          if (pk == "beta") o.base.beta = d;
          else if (pk == "sigma_ul") o.base.sigma_ul = d;
          else if (pk == "R0") o.base.R0 = d;
          else if (pk == "R") o.base.R = d;
          else if (pk == "chi") o.base.chi = d;
          else if (pk == "g_inv") o.base.g_inv = d;
          else if (pk == "prolif") o.base.prolif = d;
          else throw_error(ErrorCode::Misuse, "unknown parameter '" + pk + "'");
        }
      } else {
        throw_error(ErrorCode::Misuse, "unknown verify option '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw_error(ErrorCode::Misuse, std::string("bad verify option: ") + e.what());
  }
  validate(o.base);
  require_domain(o.l >= 1 && o.l <= 64, "l must lie in [1, 64]");
  require_domain(o.oracle_n >= 16 && o.n_r >= 8 && o.n_theta >= 8, "grid sizes too small");
  for (double b : o.betas) require_domain(b > 0.0, "betas must be positive");
  return o;
}

}  // namespace necrobifurc::verify
