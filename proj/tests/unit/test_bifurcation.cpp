#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "necrobifurc/bessel.hpp"
#include "necrobifurc/bifurcation.hpp"
#include "necrobifurc/errors.hpp"

using namespace necrobifurc;

namespace {

ModelParams demo() {
  ModelParams p;
  p.beta = 1.0;
  p.sigma_ul = 0.5;
  p.R0 = 0.5;
  p.R = 2.0;
  p.chi = 1.0;
  p.g_inv = 1.0;
  p.prolif = 1.0;
  return p;
}

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams p;
  p.beta = std::pow(10.0, -1.0 + 3.0 * u(rng));
  p.sigma_ul = 0.9 * u(rng);
  p.R0 = 0.1 + 1.5 * u(rng);
  p.R = p.R0 + 0.3 + 3.0 * u(rng);
  p.chi = 3.0 * u(rng);
  p.g_inv = 0.1 + 2.0 * u(rng);
  p.prolif = 0.5 + 3.0 * u(rng);
  return p;
}

// Curvature of the polar curve r(theta) = R + eps cos(l theta).
double exact_curvature(double R, int l, double eps, double th) {
  const double r = R + eps * std::cos(l * th);
  const double rt = -eps * l * std::sin(l * th);
  const double rtt = -eps * l * l * std::cos(l * th);
  return (r * r + 2 * rt * rt - r * rtt) / std::pow(r * r + rt * rt, 1.5);
}

ModelParams limit_regime(double R) {
  ModelParams q = demo();
  q.R = R;
  q.beta = 1e6;
  q.R0 = 1e-4;
  q.sigma_ul = bessel::besseli(0, q.R0) / bessel::besseli(0, q.R);
  return q;
}

}  // namespace

TEST_CASE("curvature linearization") {
  CHECK(curvature_linearization(1, 2.0).kappa1_coeff == 0.0);
  CHECK(curvature_linearization(0, 2.0).kappa1_coeff == -0.25);
  CHECK(curvature_linearization(3, 2.0).kappa0 * 2.0 == 1.0);
  for (int l : {0, 2, 3, 5}) {
    const double R = 1.7;
    const auto c = curvature_linearization(l, R);
    auto err = [&](double eps) {
      double e = 0.0;
      for (int i = 0; i < 64; ++i) {
        const double th = 2 * M_PI * i / 64.0;
        e = std::max(e, std::abs(exact_curvature(R, l, eps, th) - c.kappa0 - eps * c.kappa1_coeff * std::cos(l * th)));
      }
      return e;
    };
    const double ratio = err(1e-3) / err(5e-4);
    INFO("l=" << l);
    CHECK(ratio > 3.8);
    CHECK(ratio < 4.2);
  }
}

TEST_CASE("necrosis factors") {
  const double R0 = 0.5, R = 2.0;
  for (int l = 1; l <= 32; ++l) {
    const double a = necrosis_I(l, R0, R), b = necrosis_II(l, R0, R);
    const double ac = necrosis_I_complement(l, R0, R);
    CHECK(a > 0.0);
    CHECK(a <= 1.0);
    CHECK(ac > 0.0);
    CHECK(ac < 1.0);
    CHECK(b > 0.0);
    CHECK(b < 1.0);
    if (l > 1) {
      CHECK(a >= necrosis_I(l - 1, R0, R));
      CHECK(ac < necrosis_I_complement(l - 1, R0, R));
      CHECK(b < necrosis_II(l - 1, R0, R));
    }
    const double x = R0 / R;
    CHECK(std::abs(a - (1 - std::pow(x, 2 * l)) / (1 + std::pow(x, 2 * l))) <= 1e-15);
    CHECK(std::abs(b - 2 / (std::pow(R / R0, l + 1) + std::pow(R0 / R, l - 1))) <= 1e-15);
  }
  // Thin shell, large l: the log form keeps both finite and ordered.
  CHECK(necrosis_II(200, 1e-3, 2.0) >= 0.0);
  CHECK(necrosis_I(200, 1.99, 2.0) < 1.0);
}

TEST_CASE("dual-path bifurcation function") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pick_l(0, 12);
  std::uniform_real_distribution<double> pick_P(0.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = random_params(rng);
    const SteadyState s(p);
    const int l = pick_l(rng);
    const double P = pick_P(rng);
    const auto f = bifurcation_function_paths(s, l, P);
    INFO(describe(p) << " l=" << l << " P=" << P);
    const double scale = std::max({std::abs(f.direct), std::abs(f.L1), std::abs(P * f.L2)});
    CHECK(std::abs(f.direct - f.linear) <= 1e-10 * scale);
    CHECK(bifurcation_function(s, l, P) == f.direct);
  }
}

TEST_CASE("l = 0 bifurcation function and point") {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 50; ++k) {
    const ModelParams p = random_params(rng);
    const SteadyState s(p);
    const ModeSolution m(s, 0);
    const double P = 2.5;
    const double expect = P * (s.apopt() - s.sigma(p.R).value - m.q(p.R).deriv);
    CHECK(bifurcation_function(s, 0, P) == expect);
    const auto b = bifurcation_point(s, 0);
    CHECK(b.p_l == 0.0);
    CHECK(b.L1 == 0.0);
  }
}

TEST_CASE("P_l is the root and the Frechet coefficient changes sign across it") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 40; ++k) {
    const ModelParams p = random_params(rng);
    const SteadyState s(p);
    for (int l : {2, 3, 6}) {
      const auto b = bifurcation_point(s, l);
      INFO(describe(p) << " l=" << l);
      CHECK(std::abs(b.p_l * b.L2 - b.L1) <= 1e-10 * std::abs(b.L1));
      CHECK(std::abs(b.p_l - b.p_l_regrouped) <= 1e-12 * std::abs(b.p_l));
      CHECK(std::abs(b.L1 - (l / p.R) * b.terms.necrosis_I * (b.terms.surface_tension - b.terms.chemotaxis)) == 0.0);
      const double f_root = bifurcation_function(s, l, b.p_l);
      CHECK(std::abs(f_root) <= 1e-9 * std::max(1.0, std::abs(b.L1)));
      const double d = 0.01 * std::abs(b.p_l) + 1e-3;
      const double below = b.L1 - (b.p_l - d) * b.L2;
      const double above = b.L1 - (b.p_l + d) * b.L2;
      CHECK(below * above < 0.0);
    }
  }
}

TEST_CASE("translation mode") {
  ModelParams p = demo();
  p.chi = 0.0;
  const auto b = bifurcation_point(SteadyState(p), 1);
  CHECK(b.translation_mode);
  CHECK(b.terms.surface_tension == 0.0);
  CHECK(b.p_l == 0.0);
  p.chi = 2.0;
  const auto c = bifurcation_point(SteadyState(p), 1);
  CHECK(std::abs(c.p_l - (-(1 / p.R) * c.terms.necrosis_I * c.terms.chemotaxis / c.L2)) <= 1e-15 * std::abs(c.p_l));
}

TEST_CASE("limit bifurcation point") {
  CHECK(limit_bifurcation_point(0, 2.0, 1.0) == 0.0);
  CHECK(limit_bifurcation_point(1, 2.0, 1.0) == 0.0);
  const ModelParams q = limit_regime(2.0);
  const SteadyState s(q);
  for (int l = 2; l <= 8; ++l) {
    const double lim = limit_bifurcation_point(l, 2.0, 1.0);
    const double full = bifurcation_point(s, l).p_l;
    INFO("l=" << l << " full=" << full << " lim=" << lim);
    CHECK(std::abs(full - lim) / lim <= 1e-3);
    const ModeSolution m(s, l);
    CHECK(std::abs(m.q(q.R).value + s.sigma(q.R).deriv) <= 1e-3);
  }
}

TEST_CASE("degenerate denominator is reported") {
  // The limit denominator crosses zero in R for l = 2; bracket it and land on it.
  double lo = 1.0, hi = 40.0;
  auto den = [](double R) {
    const double q = bessel::besseli_ratio(0, R);
    return 1.0 - 2.0 / R * q - q * bessel::besseli_ratio(2, R);
  };
  if (den(lo) * den(hi) < 0.0) {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (den(lo) * den(mid) <= 0.0 ? hi : lo) = mid;
    }
    const double R = den(lo) == 0.0 ? lo : hi;
    if (std::abs(den(R)) <= 1e-14 * 1.0 * 6 / (R * R * R)) {
      CHECK_THROWS_AS(limit_bifurcation_point(2, R, 1.0), Error);
    }
  }
  SUCCEED();
}

TEST_CASE("monotonicity scan is schedule independent") {
  ModelParams p = demo();
  const std::vector<double> chis{0.0, 1.0, 5.0, 20.0};
  const auto a = monotonicity_scan(p, 2, 16, chis, 1);
  const auto b = monotonicity_scan(p, 2, 16, chis, 4);
  REQUIRE(a.size() == chis.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].chi == chis[i]);
    CHECK(a[i].p_l == b[i].p_l);
    CHECK(a[i].monotone == b[i].monotone);
  }
  CHECK_THROWS_AS(monotonicity_scan(p, 2, 65, chis), Error);
}

TEST_CASE("L2 positivity on a thin shell") {
  ModelParams p = demo();
  const auto rec = l2_positivity_at(p, 0.01 * p.R);
  CHECK(rec.assumption_gap > 0.0);
  CHECK(rec.positive);
  CHECK(rec.increasing);
  CHECK(rec.violated_l == -1);
  const auto all = l2_positivity_check(p, {0.1 * p.R, 0.05 * p.R, 0.025 * p.R});
  CHECK(deviation_order(all) >= 0.9);
}

TEST_CASE("violated assumption is reported") {
  ModelParams p = demo();
  p.beta = 0.1;
  p.R0 = 1.0;
  // sigma_s(R) - A < 0 for this shell.
  try {
    l2_positivity_at(p, 1.0);
    FAIL("expected AssumptionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AssumptionViolated);
  }
  const auto recs = l2_positivity_check(p, {1.0});
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].assumption_violated);
  CHECK(recs[0].assumption_gap <= 0.0);
}
