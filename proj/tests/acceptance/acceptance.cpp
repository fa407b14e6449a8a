// Acceptance criteria 1-10. Each criterion prints one PASS/FAIL line followed
// by indented detail. Usage: acceptance [criterion...]; no arguments runs all.
// Exit status is non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "bessel_oracles.hpp"
#include "fd_reference.hpp"
#include "necrobifurc/bessel.hpp"
#include "necrobifurc/bifurcation.hpp"
#include "necrobifurc/linear_modes.hpp"
#include "necrobifurc/necrobifurc.h"
#include "necrobifurc/oracle.hpp"
#include "necrobifurc/parallel.hpp"
#include "necrobifurc/steady_state.hpp"

using namespace necrobifurc;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2024;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("violated: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Same ranges as the library's randomised suites, independent stream.
ModelParams draw(std::mt19937_64& rng) {
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

std::vector<double> grid(double a, double b, int points) {
  std::vector<double> r(points);
  for (int i = 0; i < points; ++i) r[i] = i == points - 1 ? b : a + (b - a) * i / (points - 1);
  return r;
}

// 1. Bessel identities at 200 samples.
Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_int_distribution<int> pick_n(0, 16);
  std::uniform_real_distribution<double> pick_lx(std::log(1e-3), std::log(50.0));
  constexpr double tol = 1e-11;
  double worst = 0.0;
  int violations = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = pick_n(rng);
    const double x = std::exp(pick_lx(rng));
    const int nm = n == 0 ? 1 : n - 1;  // I_{-1} = I_1, K_{-1} = K_1
    const double in = bessel::besseli(n, x), ip = bessel::besseli(n + 1, x), im = bessel::besseli(nm, x);
    const double kn = bessel::besselk(n, x), kp = bessel::besselk(n + 1, x), km = bessel::besselk(nm, x);
    const auto [di, dk] = bessel::bessel_derivs(n, x);
    const double t = n / x;
    auto rel = [](double lhs, double rhs, double scale) { return std::abs(lhs - rhs) / scale; };
    const double res[] = {
        rel(im - ip, 2.0 * t * in, std::max(im, ip)),                      // I_{n-1} - I_{n+1} = (2n/x) I_n
        rel(kp - km, 2.0 * t * kn, kp),                                   // K_{n+1} - K_{n-1} = (2n/x) K_n
        rel(di, im - t * in, std::max(im, t * in)),                       // I_n' = I_{n-1} - (n/x) I_n
        rel(dk, -km - t * kn, km + t * kn),                               // K_n' = -K_{n-1} - (n/x) K_n
        rel(di, ip + t * in, ip + t * in),                                // I_n' = I_{n+1} + (n/x) I_n
        rel(dk, -kp + t * kn, std::max(kp, t * kn)),                      // K_n' = -K_{n+1} + (n/x) K_n
        std::abs(x * (in * kp + ip * kn) - 1.0),                          // Wronskian
    };
    const bool signs = in > 0 && kn > 0 && di > 0 && dk < 0;
    bool ok = signs;
    for (double r : res) {
      worst = std::max(worst, r);
      ok = ok && r <= tol;
    }
    if (!ok) {
      ++violations;
      if (violations <= 3) o.note("sample n=" + std::to_string(n) + " x=" + num(x) + " fails");
    }
  }
  const double secs = seconds_since(t0);
  o.require(violations == 0, std::to_string(violations) + " of 200 samples exceed 1e-11 or break a sign");
  o.require(secs < 1.0, "runtime " + num(secs) + " s >= 1 s");
  o.note("worst relative residual " + num(worst) + ", runtime " + num(secs) + " s");
  return o;
}

// 2. Closed forms against an independent finite-difference solve.
Outcome criterion2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  constexpr int n = 4096;
  std::mt19937_64 rng(kSeed + 2);
  std::vector<ModelParams> sets;
  for (int k = 0; k < 20; ++k) sets.push_back(draw(rng));

  struct Row {
    double err[5];
    double order[5];
  };
  std::vector<Row> rows(sets.size());
  parallel_for(sets.size(), 0, [&](std::size_t k) {
    const ModelParams& p = sets[k];
    const SteadyState s(p);
    auto one = [](double) { return 1.0; };
    auto sigma_fd = [&](int m) {
      return fd_ref::solve_nodal(p.R0, p.R, m, one, std::vector<double>(m + 1, 0.0), fd_ref::dirichlet(p.sigma_ul),
                                 fd_ref::robin(p.beta, p.beta));
    };
    auto pressure_fd = [&](int m) {
      // p'' + p'/r = -(P - chi) sigma + P A, p'(R0) = chi sigma'(R0), p(R) = G/R.
      const auto sig = sigma_fd(m);
      std::vector<double> f(m + 1);
      for (int i = 0; i <= m; ++i) f[i] = -(p.prolif - p.chi) * sig.u[i] + p.prolif * s.apopt();
      return fd_ref::solve_nodal(p.R0, p.R, m, [](double) { return 0.0; }, f,
                                 fd_ref::robin(0.0, p.chi * s.sigma(p.R0).deriv), fd_ref::dirichlet(p.g_inv / p.R));
    };
    const double sR = s.sigma(p.R).value;
    const double dsR = p.beta * (1.0 - sR);
    const double forcing = (sR - dsR / p.R) + p.beta * dsR;
    auto q_fd = [&](int l, int m) {
      const double l2 = static_cast<double>(l) * l;
      return fd_ref::solve_nodal(p.R0, p.R, m, [l2](double r) { return 1.0 + l2 / (r * r); },
                                 std::vector<double>(m + 1, 0.0), fd_ref::dirichlet(0.0),
                                 fd_ref::robin(p.beta, -forcing));
    };
    auto study = [&](const std::function<fd_ref::Grid(int)>& solve, const std::function<double(double)>& exact) {
      return fd_ref::richardson(solve(n), solve(2 * n), solve(4 * n), exact);
    };
    Row row{};
    const auto rs = study(sigma_fd, [&](double r) { return s.sigma(std::min(r, p.R)).value; });
    const auto rp = study(pressure_fd, [&](double r) { return s.pressure(std::min(r, p.R)).value; });
    row.err[0] = rs.max_rel_err;
    row.order[0] = rs.order;
    row.err[1] = rp.max_rel_err;
    row.order[1] = rp.order;
    int j = 2;
    for (int l : {0, 2, 5}) {
      const ModeSolution m(s, l);
      const auto rq = study([&](int k2) { return q_fd(l, k2); }, [&](double r) { return m.q(std::min(r, p.R)).value; });
      row.err[j] = rq.max_rel_err;
      row.order[j] = rq.order;
      ++j;
    }
    rows[k] = row;
  });
  const char* names[] = {"sigma", "pressure", "Q_0", "Q_2", "Q_5"};
  double worst = 0.0, lo = 10.0, hi = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (int j = 0; j < 5; ++j) {
      worst = std::max(worst, rows[k].err[j]);
      lo = std::min(lo, rows[k].order[j]);
      hi = std::max(hi, rows[k].order[j]);
      if (rows[k].err[j] > 1e-6 || rows[k].order[j] < 1.7 || rows[k].order[j] > 2.3) {
        o.require(false, std::string(names[j]) + " in set " + std::to_string(k) + ": error " + num(rows[k].err[j]) +
                             ", order " + num(rows[k].order[j]));
      }
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs < 30.0, "runtime " + num(secs) + " s >= 30 s");
  o.note("20 sets x {sigma, p, Q_0, Q_2, Q_5} at n=4096: worst relative error " + num(worst) + ", orders in [" +
         num(lo) + ", " + num(hi) + "], runtime " + num(secs) + " s");
  return o;
}

// 3. E, F bounds and signs; sigma in [0, 1] and A >= 0 on random draws.
Outcome criterion3() {
  Outcome o;
  constexpr double slack = 1e-12;
  int violations = 0;
  for (double beta : {0.1, 1.0, 10.0}) {
    ModelParams p;
    p.beta = beta;
    const SteadyState s(p);
    for (double r : grid(p.R0, p.R, 1001)) {
      const EFValue e = s.ef(r);
      const bool ok = e.E >= -slack && e.E <= 1 + slack && e.F >= -slack && e.F <= 1 + slack && e.dE <= slack &&
                      e.dF >= -slack;
      if (!ok) ++violations;
    }
  }
  o.require(violations == 0, std::to_string(violations) + " E/F grid violations");
  std::mt19937_64 rng(kSeed + 3);
  int draw_violations = 0;
  double smin = 1.0, smax = 0.0, amin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    const ModelParams p = draw(rng);
    const SteadyState s(p);
    for (double r : grid(p.R0, p.R, 1001)) {
      const double v = s.sigma(r).value;
      smin = std::min(smin, v);
      smax = std::max(smax, v);
      if (v < -slack || v > 1 + slack) ++draw_violations;
    }
    amin = std::min(amin, s.apopt());
    if (s.apopt() < -slack) ++draw_violations;
  }
  o.require(draw_violations == 0, std::to_string(draw_violations) + " violations on random draws");
  o.note("E/F on 3 x 1001 points; 200 draws: sigma in [" + num(smin) + ", " + num(smax) + "], min A " + num(amin));
  return o;
}

// 4. G_beta bounds for beta in {0.1, 1, 10}, l = 2.
Outcome criterion4() {
  Outcome o;
  // Four ulps of multiplicative slack on the upper bounds, which coincide
  // with G only at r = R0 where all three vanish.
  const double ulps = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
  int violations = 0;
  double tightest = std::numeric_limits<double>::infinity();
  for (double beta : {0.1, 1.0, 10.0}) {
    ModelParams p;
    p.beta = beta;
    const SteadyState s(p);
    const ModeSolution m(s, 2);
    for (double r : grid(p.R0, p.R, 1001)) {
      const GBetaValue g = m.g_beta(r);
      const double bound = std::min(g.G0, std::pow(r / p.R, 2) / beta);
      if (g.dG < 0.0 || g.G < 0.0 || g.G > bound * ulps) ++violations;
      if (r > p.R0) tightest = std::min(tightest, (bound - g.G) / bound);
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.note("3 x 1001 points; smallest relative gap to the upper bound " + num(tightest));
  return o;
}

// 5. a_l and b_l monotonicity.
Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 5);
  int violations = 0;
  for (int k = 0; k < 10; ++k) {
    const ModelParams p = draw(rng);
    const SteadyState s(p);
    for (int j = 1; j <= 5; ++j) {
      const double r = j == 5 ? p.R : p.R0 + (p.R - p.R0) * j / 5.0;
      const auto a = a_l_sequence(s, r, 16);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0.0)) ++violations;
        if (i > 0 && !(a[i] < a[i - 1])) ++violations;
      }
    }
    const BSequence b = b_l_sequence(s, 16);
    for (std::size_t i = 1; i < b.inner.size(); ++i) {
      if (!(b.inner[i] < b.inner[i - 1])) ++violations;
      if (!(b.outer[i] > b.outer[i - 1])) ++violations;
    }
  }
  o.require(violations == 0, std::to_string(violations) + " monotonicity violations");
  o.note("l = 1..16, 5 radii, 10 parameter sets");
  return o;
}

// 6. P_0 = 0, dual-path agreement, necrosis monotonicity.
Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 6);
  std::uniform_int_distribution<int> pick_l(0, 16);
  std::uniform_real_distribution<double> pick_P(0.0, 10.0);
  double worst_p0 = 0.0, worst_dual = 0.0;
  int necrosis_violations = 0;
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = draw(rng);
    const SteadyState s(p);
    worst_p0 = std::max(worst_p0, std::abs(bifurcation_point(s, 0).p_l));
    const int l = pick_l(rng);
    const double P = pick_P(rng);
    const BifurcationPaths f = bifurcation_function_paths(s, l, P);
    const double scale = std::max({std::abs(f.direct), std::abs(f.L1), std::abs(P * f.L2)});
    worst_dual = std::max(worst_dual, std::abs(f.direct - f.linear) / scale);
    for (int m = 1; m <= 32; ++m) {
      const double x = p.R0 / p.R;
      const double expect_i = std::tanh(m * std::log(p.R / p.R0));
      const double expect_ii = 2.0 / (std::pow(1.0 / x, m + 1) + std::pow(x, m - 1));
      if (std::abs(necrosis_I(m, p.R0, p.R) - expect_i) > 1e-15) ++necrosis_violations;
      if (std::abs(necrosis_II(m, p.R0, p.R) - expect_ii) > 1e-14 * expect_ii) ++necrosis_violations;
      if (m > 1) {
        // necrosis_I saturates at 1 in double; its complement carries the order.
        if (!(necrosis_I_complement(m, p.R0, p.R) < necrosis_I_complement(m - 1, p.R0, p.R))) ++necrosis_violations;
        if (!(necrosis_I(m, p.R0, p.R) >= necrosis_I(m - 1, p.R0, p.R))) ++necrosis_violations;
        if (!(necrosis_II(m, p.R0, p.R) < necrosis_II(m - 1, p.R0, p.R))) ++necrosis_violations;
      }
    }
  }
  o.require(worst_p0 <= 1e-12, "|P_0| = " + num(worst_p0));
  o.require(worst_dual <= 1e-10, "dual-path relative gap " + num(worst_dual));
  o.require(necrosis_violations == 0, std::to_string(necrosis_violations) + " necrosis violations");
  o.note("100 draws: max |P_0| " + num(worst_p0) + ", max dual-path gap " + num(worst_dual));
  return o;
}

// Limiting P_l from long-double Bessel series, independent of the library kernels.
double reference_limit(int l, double R, double g_inv) {
  const long double i0 = oracle_ref::besseli_series(0, R), i1 = oracle_ref::besseli_series(1, R);
  const long double il = oracle_ref::besseli_series(l, R), il1 = oracle_ref::besseli_series(l + 1, R);
  const long double q = i1 / i0;
  const long double den = 1.0L - 2.0L / R * q - q * il1 / il;
  return static_cast<double>(g_inv * (static_cast<long double>(l) * l * l - l) / (R * R * R) / den);
}

// 7. Recovery of the beta -> inf, R0 -> 0 bifurcation points.
Outcome criterion7() {
  Outcome o;
  ModelParams p;
  p.beta = 1e6;
  p.R0 = 1e-4;
  p.R = 2.0;
  p.g_inv = 1.0;
  // Inner nutrient value consistent with the limiting profile I_0(r)/I_0(R).
  p.sigma_ul = static_cast<double>(oracle_ref::besseli_series(0, p.R0) / oracle_ref::besseli_series(0, p.R));
  const SteadyState s(p);
  double worst = 0.0, worst_chem = 0.0;
  for (int l = 2; l <= 8; ++l) {
    const double lim = reference_limit(l, p.R, p.g_inv);
    const double err = std::abs(bifurcation_point(s, l).p_l - lim) / lim;
    const double chem = std::abs(ModeSolution(s, l).q(p.R).value + s.sigma(p.R).deriv);
    worst = std::max(worst, err);
    worst_chem = std::max(worst_chem, chem);
    o.require(err <= 1e-3, "l=" + std::to_string(l) + " relative error " + num(err));
    o.require(chem <= 1e-3, "l=" + std::to_string(l) + " |Q_l(R) + sigma'(R)| = " + num(chem));
  }
  o.note("sigma_ul = I_0(R0)/I_0(R) = " + num(p.sigma_ul) + "; max relative error " + num(worst) +
         ", max |Q_l(R) + sigma'(R)| " + num(worst_chem));
  ModelParams raw = p;
  raw.sigma_ul = 0.5;
  const SteadyState sr(raw);
  double raw_worst = 0.0;
  for (int l = 2; l <= 8; ++l) {
    const double lim = reference_limit(l, p.R, p.g_inv);
    raw_worst = std::max(raw_worst, std::abs(bifurcation_point(sr, l).p_l - lim) / lim);
  }
  o.note("for reference, sigma_ul = 0.5 gives max relative error " + num(raw_worst));
  return o;
}

// 8. Chemotaxis-driven loss of monotonicity in l.
Outcome criterion8() {
  Outcome o;
  const double beta = NBF_REORDER_SCAN_BETA, R0 = NBF_REORDER_SCAN_R0;
  bool any = false;
  for (double R : {1.5, 2.0, 3.0, 5.0}) {
    for (double g : {0.1, 1.0}) {
      ModelParams p;
      p.beta = beta;
      p.R0 = R0;
      p.R = R;
      p.g_inv = g;
      const auto rows = monotonicity_scan(p, 2, 16, {1.0, 100.0}, 0);
      const bool hit = rows[0].monotone && !rows[1].monotone;
      any = any || hit;
      o.note("scan R=" + num(R) + " g_inv=" + num(g) + ": monotone at chi=1 " + (rows[0].monotone ? "yes" : "no") +
             ", at chi=100 " + (rows[1].monotone ? "yes" : "no"));
    }
  }
  ModelParams rec;
  rec.beta = beta;
  rec.R0 = R0;
  rec.R = NBF_REORDER_SCAN_R;
  rec.g_inv = NBF_REORDER_SCAN_G_INV;
  const auto rows = monotonicity_scan(rec, 2, 16, {1.0, 100.0}, 0);
  o.require(rows[0].monotone, "recorded geometry not monotone at chi=1");
  o.require(!rows[1].monotone, "recorded (R, g_inv) = (" + num(rec.R) + ", " + num(rec.g_inv) +
                                   ") still monotone at chi=100");
  if (!any) o.note("none of the 8 scanned cells loses monotonicity at chi=100");
  std::vector<double> lim;
  for (int l = 2; l <= 16; ++l) lim.push_back(reference_limit(l, rec.R, rec.g_inv));
  o.require(strictly_increasing(lim), "limiting curve not increasing");
  // Smaller supply rate for contrast; not part of the criterion.
  ModelParams demo;
  demo.beta = 100.0;
  demo.R0 = 1.0;
  demo.R = 2.0;
  demo.g_inv = 0.1;
  const auto contrast = monotonicity_scan(demo, 2, 16, {1.0, 100.0}, 0);
  o.note(std::string("contrast beta=100, R=2, g_inv=0.1: monotone at chi=100 ") +
         (contrast[1].monotone ? "yes" : "no, first descent at l=" + std::to_string(contrast[1].first_descent)));
  return o;
}

// 9. L2 on thin shells.
Outcome criterion9() {
  Outcome o;
  ModelParams p;
  p.R = 2.0;
  std::vector<double> eps;
  for (double f : {0.1, 0.05, 0.025, 0.01}) eps.push_back(f * p.R);
  const auto recs = l2_positivity_check(p, eps, 16);
  for (const auto& r : recs) {
    o.require(!r.assumption_violated, "sigma_s(R) - A <= 0 at shell " + num(r.shell_eps));
    o.note("shell " + num(r.shell_eps) + ": sigma_s(R) - A = " + num(r.assumption_gap) + ", max |L2 - gap| " +
           num(r.max_deviation) + " (relative " + num(r.relative_deviation) + ")");
  }
  const L2Record& thin = recs.back();
  o.require(thin.positive, "L2 not positive at the thinnest shell");
  o.require(thin.increasing, "L2 not increasing at the thinnest shell");
  const double abs_order = deviation_order(recs, false);
  const double rel_order = deviation_order(recs, true);
  o.require(abs_order >= 0.9, "absolute deviation decays at order " + num(abs_order));
  o.require(rel_order >= 0.8 && rel_order <= 1.3, "relative deviation decays at order " + num(rel_order));
  o.note("deviation order: absolute " + num(abs_order) + ", relative to the gap " + num(rel_order));
  return o;
}

// 10. Second-order accuracy of the boundary perturbation expansion in 2-D.
Outcome criterion10() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const ModelParams p;
  const auto rep = oracle::expansion_check_2d(p, 2, {0.02, 0.01}, 512, 256);
  const double secs = seconds_since(t0);
  const double ratio = rep.ratio_second[0];
  o.require(ratio >= 3.0 && ratio <= 5.0, "e(0.02)/e(0.01) = " + num(ratio));
  o.require(secs < 120.0, "runtime " + num(secs) + " s >= 120 s");
  o.note("errors " + num(rep.err_second[0]) + ", " + num(rep.err_second[1]) + "; ratio " + num(ratio) +
         "; first-order-only ratio " + num(rep.ratio_first[0]) + "; eps=0 error " + num(rep.baseline_error) +
         "; runtime " + num(secs) + " s");
  return o;
}

struct Criterion {
  const char* title;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"Bessel identities, 200 samples, 1e-11", criterion1},
    {"closed forms match FD to 1e-6 with Richardson order in [1.7, 2.3]", criterion2},
    {"E, F bounds; sigma in [0, 1]; A >= 0", criterion3},
    {"G_beta bounds for beta in {0.1, 1, 10}, l = 2", criterion4},
    {"a_l, b_l monotone in l", criterion5},
    {"P_0 = 0, dual-path agreement, necrosis monotonicity", criterion6},
    {"limit recovery and chemotaxis independence", criterion7},
    {"monotonicity of P_l lost at chi = 100 (beta = 1e4, R0 = 1)", criterion8},
    {"L2 positive, increasing, and tends to sigma_s(R) - A", criterion9},
    {"2-D expansion error ratio in [3, 5]", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > 10) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    which.push_back(c);
  }
  if (which.empty()) {
    for (int c = 1; c <= 10; ++c) which.push_back(c);
  }
  bool all = true;
  for (int c : which) {
    const Criterion& crit = kCriteria[c - 1];
    Outcome o;
    try {
      o = crit.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", c, crit.title);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
