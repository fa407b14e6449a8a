#include "necrobifurc/necrobifurc.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "necrobifurc/bifurcation.hpp"
#include "necrobifurc/errors.hpp"
#include "necrobifurc/linear_modes.hpp"
#include "necrobifurc/nondim.hpp"
#include "necrobifurc/oracle.hpp"
#include "necrobifurc/steady_state.hpp"
#include "necrobifurc/verify.hpp"

struct nbf_steady {
  necrobifurc::SteadyState state;
};

struct nbf_mode {
  necrobifurc::ModeSolution mode;
};

namespace {

using namespace necrobifurc;

thread_local std::string g_last_error;

nbf_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::Domain: return NBF_ERR_DOMAIN;
    case ErrorCode::NoRoot: return NBF_ERR_NO_ROOT;
    case ErrorCode::DegenerateDenominator: return NBF_ERR_DEGENERATE;
    case ErrorCode::AssumptionViolated: return NBF_ERR_ASSUMPTION;
    case ErrorCode::InconclusiveResolution: return NBF_ERR_INCONCLUSIVE;
    case ErrorCode::Misuse: return NBF_ERR_MISUSE;
    case ErrorCode::Internal: return NBF_ERR_INTERNAL;
  }
  return NBF_ERR_INTERNAL;
}

// Runs body, translating exceptions into status codes and the thread-local message.
template <class Body>
nbf_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return NBF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return NBF_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NBF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return NBF_ERR_INTERNAL;
  }
}

nbf_status null_arg(const char* name) {
  g_last_error = std::string("null argument: ") + name;
  return NBF_ERR_NULL_ARGUMENT;
}

#define NBF_REQUIRE(ptr) \
  if ((ptr) == nullptr) return null_arg(#ptr)

ModelParams from_c(const nbf_params& c) {
  ModelParams p;
  p.beta = c.beta;
  p.sigma_ul = c.sigma_ul;
  p.R0 = c.R0;
  p.R = c.R;
  p.chi = c.chi;
  p.g_inv = c.g_inv;
  p.prolif = c.prolif;
  p.apopt = c.apopt;
  if (c.apopt_source != NBF_APOPT_FROM_GEOMETRY && c.apopt_source != NBF_APOPT_PRESCRIBED) {
    throw_error(ErrorCode::Misuse, "unknown apoptosis source " + std::to_string(c.apopt_source));
  }
  p.apopt_source = c.apopt_source == NBF_APOPT_PRESCRIBED ? ApoptosisSource::Prescribed : ApoptosisSource::FromGeometry;
  return p;
}

nbf_params to_c(const ModelParams& p) {
  nbf_params c;
  c.beta = p.beta;
  c.sigma_ul = p.sigma_ul;
  c.R0 = p.R0;
  c.R = p.R;
  c.chi = p.chi;
  c.g_inv = p.g_inv;
  c.prolif = p.prolif;
  c.apopt = p.apopt;
  c.apopt_source = p.apopt_source == ApoptosisSource::Prescribed ? NBF_APOPT_PRESCRIBED : NBF_APOPT_FROM_GEOMETRY;
  return c;
}

void fill(nbf_bifurcation& out, const BifurcationResult& r, double chi, bool degenerate) {
  out.l = r.l;
  out.chi = chi;
  out.degenerate = degenerate ? 1 : 0;
  out.P_l = degenerate ? std::numeric_limits<double>::quiet_NaN() : r.p_l;
  out.L1 = r.L1;
  out.L2 = r.L2;
  out.P_l_regrouped = degenerate ? std::numeric_limits<double>::quiet_NaN() : r.p_l_regrouped;
  out.translation_mode = r.translation_mode ? 1 : 0;
  const BifurcationTerms& t = r.terms;
  out.necrosis_I = t.necrosis_I;
  out.necrosis_II = t.necrosis_II;
  out.surface_tension = t.surface_tension;
  out.chemotaxis = t.chemotaxis;
  out.nutrient_at_boundary = t.nutrient_at_boundary;
  out.apoptosis_term = t.apoptosis_term;
  out.lambda_term = t.lambda_term;
  out.lambda_q_outer = t.lambda_q_outer;
  out.lambda_necrosis_I = t.lambda_necrosis_I;
  out.lambda_necrosis_II = t.lambda_necrosis_II;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* nbf_version(void) { return NECROBIFURC_VERSION; }

const char* nbf_status_name(nbf_status s) {
  switch (s) {
    case NBF_OK: return "ok";
    case NBF_ERR_DOMAIN: return "domain";
    case NBF_ERR_NO_ROOT: return "no_root";
    case NBF_ERR_DEGENERATE: return "degenerate_denominator";
    case NBF_ERR_ASSUMPTION: return "assumption_violated";
    case NBF_ERR_INCONCLUSIVE: return "inconclusive_resolution";
    case NBF_ERR_MISUSE: return "misuse";
    case NBF_ERR_INTERNAL: return "internal";
    case NBF_ERR_NULL_ARGUMENT: return "null_argument";
    case NBF_ERR_OUT_OF_MEMORY: return "out_of_memory";
  }
  return "unknown";
}

const char* nbf_last_error_message(void) { return g_last_error.c_str(); }

nbf_status nbf_params_default(nbf_params* out) {
  NBF_REQUIRE(out);
  *out = to_c(ModelParams{});
  g_last_error.clear();
  return NBF_OK;
}

nbf_status nbf_params_validate(const nbf_params* p) {
  NBF_REQUIRE(p);
  return guarded([&] { validate(from_c(*p)); });
}

nbf_status nbf_dimensional_default(nbf_dimensional* out) {
  NBF_REQUIRE(out);
  const DimensionalParams d;
  *out = nbf_dimensional{d.D,        d.lambda,    d.lambda_M,  d.lambda_A, d.mu,     d.gamma, d.chi_sigma_dim,
                         d.chi_bar, d.sigma_inf, d.sigma_N,   d.beta_dim, d.R0_dim, d.R_dim};
  g_last_error.clear();
  return NBF_OK;
}

nbf_status nbf_nondimensionalize(const nbf_dimensional* d, nbf_params* out, nbf_nondim_diagnostics* diag) {
  NBF_REQUIRE(d);
  NBF_REQUIRE(out);
  return guarded([&] {
    DimensionalParams in;
    in.D = d->D;
    in.lambda = d->lambda;
    in.lambda_M = d->lambda_M;
    in.lambda_A = d->lambda_A;
    in.mu = d->mu;
    in.gamma = d->gamma;
    in.chi_sigma_dim = d->chi_sigma_dim;
    in.chi_bar = d->chi_bar;
    in.sigma_inf = d->sigma_inf;
    in.sigma_N = d->sigma_N;
    in.beta_dim = d->beta_dim;
    in.R0_dim = d->R0_dim;
    in.R_dim = d->R_dim;
    const NondimResult r = nondimensionalize(in);
    *out = to_c(r.params);
    if (diag != nullptr) {
      const NondimDiagnostics& g = r.diagnostics;
      *diag = nbf_nondim_diagnostics{g.L,   g.lambda_chi, g.p_scale, g.eps, g.quasi_steady_warning ? 1 : 0,
                                     g.reference_eps_taxis_estimate, g.reference_eps_rounded};
    }
  });
}

nbf_status nbf_steady_create(const nbf_params* p, nbf_steady** out) {
  NBF_REQUIRE(p);
  NBF_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new nbf_steady{SteadyState(from_c(*p))}; });
}

void nbf_steady_destroy(nbf_steady* s) { delete s; }

nbf_status nbf_steady_summary_get(const nbf_steady* s, nbf_steady_summary* out) {
  NBF_REQUIRE(s);
  NBF_REQUIRE(out);
  const SteadyState& st = s->state;
  *out = nbf_steady_summary{st.a1(), st.a2(), st.c1(), st.c2(), st.apopt()};
  g_last_error.clear();
  return NBF_OK;
}

nbf_status nbf_steady_eval(const nbf_steady* s, double r, nbf_steady_point* out) {
  NBF_REQUIRE(s);
  NBF_REQUIRE(out);
  return guarded([&] {
    const SigmaValue v = s->state.sigma(r);
    const PressureValue pv = s->state.pressure(r);
    const EFValue e = s->state.ef(r);
    *out = nbf_steady_point{v.value, v.deriv, v.second, pv.value, pv.deriv, e.E, e.F, e.dE, e.dF};
  });
}

nbf_status nbf_steady_limits(const nbf_params* p, double r, nbf_steady_limit_point* out) {
  NBF_REQUIRE(p);
  NBF_REQUIRE(out);
  return guarded([&] {
    const SteadyLimits l = steady_limits(from_c(*p), r);
    *out = nbf_steady_limit_point{l.E0, l.E_inf, l.F_inf, l.sigma, l.dsigma, l.apopt, l.p, l.dp};
  });
}

nbf_status nbf_apoptosis_of_radius(const nbf_params* p, double R, double* out) {
  NBF_REQUIRE(p);
  NBF_REQUIRE(out);
  return guarded([&] { *out = apoptosis_of_radius(from_c(*p), R); });
}

nbf_status nbf_solve_radius(const nbf_params* p, double apopt_target, double lo, double hi, double* R_out) {
  NBF_REQUIRE(p);
  NBF_REQUIRE(R_out);
  return guarded([&] { *R_out = solve_radius(from_c(*p), apopt_target, lo, hi); });
}

nbf_status nbf_mode_create(const nbf_steady* s, int l, nbf_mode** out) {
  NBF_REQUIRE(s);
  NBF_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new nbf_mode{ModeSolution(s->state, l)}; });
}

void nbf_mode_destroy(nbf_mode* m) { delete m; }

nbf_status nbf_mode_eval(const nbf_mode* m, double r, nbf_mode_point* out) {
  NBF_REQUIRE(m);
  NBF_REQUIRE(out);
  return guarded([&] {
    const RadialValue q = m->mode.q(r);
    const RadialValue qc = m->mode.q_coefficients(r);
    const GBetaValue g = m->mode.g_beta(r);
    *out = nbf_mode_point{q.value, q.deriv, qc.value, qc.deriv, g.G, g.dG, g.G0, g.Ginf};
  });
}

nbf_status nbf_mode_coefficients_get(const nbf_mode* m, nbf_mode_coefficients* out) {
  NBF_REQUIRE(m);
  NBF_REQUIRE(out);
  *out = nbf_mode_coefficients{m->mode.l(), m->mode.b1(), m->mode.b2(), m->mode.forcing()};
  g_last_error.clear();
  return NBF_OK;
}

nbf_status nbf_mode_limits(int l, double R, double r, double* q, double* dq) {
  NBF_REQUIRE(q);
  return guarded([&] {
    const RadialValue v = mode_limits(l, R, r);
    *q = v.value;
    if (dq != nullptr) *dq = v.deriv;
  });
}

nbf_status nbf_bifurcation_point(const nbf_steady* s, int l, nbf_bifurcation* out) {
  NBF_REQUIRE(s);
  NBF_REQUIRE(out);
  return guarded([&] { fill(*out, bifurcation_point(s->state, l), s->state.params().chi, false); });
}

nbf_status nbf_bifurcation_function(const nbf_steady* s, int l, double prolif, double* direct, double* linear) {
  NBF_REQUIRE(s);
  NBF_REQUIRE(direct);
  return guarded([&] {
    const BifurcationPaths f = bifurcation_function_paths(s->state, l, prolif);
    *direct = f.direct;
    if (linear != nullptr) *linear = f.linear;
  });
}

nbf_status nbf_limit_bifurcation_point(int l, double R, double g_inv, double* out) {
  NBF_REQUIRE(out);
  return guarded([&] { *out = limit_bifurcation_point(l, R, g_inv); });
}

nbf_status nbf_bifurcation_scan(const nbf_params* p, const double* chis, size_t n_chi, int l_lo, int l_hi, int jobs,
                                nbf_bifurcation* rows, int* monotone, int* first_descent) {
  NBF_REQUIRE(p);
  NBF_REQUIRE(chis);
  NBF_REQUIRE(rows);
  return guarded([&] {
    if (n_chi == 0) throw_error(ErrorCode::Misuse, "empty chi list");
    const std::vector<double> chi_values(chis, chis + n_chi);
    const auto scan = monotonicity_scan(from_c(*p), l_lo, l_hi, chi_values, jobs);
    std::size_t k = 0;
    for (std::size_t i = 0; i < scan.size(); ++i) {
      const MonotonicityRow& row = scan[i];
      for (std::size_t j = 0; j < row.results.size(); ++j) fill(rows[k++], row.results[j], row.chi, row.degenerate[j]);
      if (monotone != nullptr) monotone[i] = row.monotone ? 1 : 0;
      if (first_descent != nullptr) first_descent[i] = row.first_descent;
    }
  });
}

nbf_status nbf_l2_check(const nbf_params* p, const double* shell_eps, size_t n, int l_max, nbf_l2_record* out,
                        double* abs_order, double* rel_order) {
  NBF_REQUIRE(p);
  NBF_REQUIRE(shell_eps);
  NBF_REQUIRE(out);
  return guarded([&] {
    const auto recs = l2_positivity_check(from_c(*p), std::vector<double>(shell_eps, shell_eps + n), l_max);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const L2Record& r = recs[i];
      out[i] = nbf_l2_record{r.shell_eps,          r.R0,
                             r.assumption_gap,     r.assumption_violated ? 1 : 0,
                             r.positive ? 1 : 0,   r.increasing ? 1 : 0,
                             r.violated_l,         r.max_deviation,
                             r.relative_deviation};
    }
    if (abs_order != nullptr) *abs_order = deviation_order(recs, false);
    if (rel_order != nullptr) *rel_order = deviation_order(recs, true);
  });
}

nbf_status nbf_oracle_check(const nbf_params* p, const char* quantity, int l, int n, nbf_comparison* out) {
  NBF_REQUIRE(p);
  NBF_REQUIRE(quantity);
  NBF_REQUIRE(out);
  return guarded([&] {
    const ModelParams mp = from_c(*p);
    const std::string q(quantity);
    oracle::Comparison c;
    if (q == "Q") {
      c = oracle::mode_comparison(mp, l, n);
    } else if (q == "sigma" || q == "pressure") {
      const auto all = oracle::steady_comparisons(mp, n);
      c = all[q == "sigma" ? 0 : 1];
    } else {
      throw_error(ErrorCode::Misuse, "unknown oracle quantity '" + q + "'");
    }
    *out = nbf_comparison{c.grid_n, c.max_rel_err, c.conv_order};
  });
}

nbf_status nbf_verify(const char* options_json, char** report_json, int* all_passed) {
  NBF_REQUIRE(report_json);
  *report_json = nullptr;
  return guarded([&] {
    nlohmann::json j;
    if (options_json != nullptr && *options_json != '\0') {
      j = nlohmann::json::parse(options_json, nullptr, false);
      if (j.is_discarded()) throw_error(ErrorCode::Misuse, "verify options are not valid JSON");
    }
    const verify::Report rep = verify::run(verify::options_from_json(j));
    *report_json = dup_string(rep.to_json().dump(2));
    if (all_passed != nullptr) *all_passed = rep.passed ? 1 : 0;
  });
}

nbf_status nbf_verify_suite_names(char** out) {
  NBF_REQUIRE(out);
  return guarded([&] {
    std::string s;
    for (const auto& n : verify::suite_names()) s += n + "\n";
    *out = dup_string(s);
  });
}

void nbf_free_string(char* s) { std::free(s); }

}  // extern "C"
