#ifndef NECROBIFURC_H
#define NECROBIFURC_H

/* C interface to the necrobifurc library. Objects are opaque handles; every
   fallible call returns an nbf_status and leaves a message retrievable with
   nbf_last_error_message() on the calling thread. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(NECROBIFURC_BUILDING)
#    define NBF_API __declspec(dllexport)
#  else
#    define NBF_API __declspec(dllimport)
#  endif
#else
#  define NBF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Geometry recorded for the chemotaxis reordering scan (CLI preset "fig4").
   No (R, g_inv) in {1.5, 2, 3, 5} x {0.1, 1} reorders {P_l} at chi = 100 with
   beta = 1e4, R0 = 1; R = 3, g_inv = 0.1 has the smallest P_3 / P_2 gap. */
#define NBF_REORDER_SCAN_BETA 1e4
#define NBF_REORDER_SCAN_R0 1.0
#define NBF_REORDER_SCAN_R 3.0
#define NBF_REORDER_SCAN_G_INV 0.1

typedef enum nbf_status {
  NBF_OK = 0,
  NBF_ERR_DOMAIN = 1,
  NBF_ERR_NO_ROOT = 2,
  NBF_ERR_DEGENERATE = 3,
  NBF_ERR_ASSUMPTION = 4,
  NBF_ERR_INCONCLUSIVE = 5,
  NBF_ERR_MISUSE = 6,
  NBF_ERR_INTERNAL = 7,
  NBF_ERR_NULL_ARGUMENT = 8,
  NBF_ERR_OUT_OF_MEMORY = 9
} nbf_status;

typedef enum nbf_apoptosis_source {
  NBF_APOPT_FROM_GEOMETRY = 0,
  NBF_APOPT_PRESCRIBED = 1
} nbf_apoptosis_source;

typedef struct nbf_params {
  double beta;
  double sigma_ul;
  double R0;
  double R;
  double chi;
  double g_inv;
  double prolif;
  double apopt;
  int apopt_source; /* nbf_apoptosis_source */
} nbf_params;

typedef struct nbf_dimensional {
  double D, lambda, lambda_M, lambda_A, mu, gamma;
  double chi_sigma_dim, chi_bar, sigma_inf, sigma_N, beta_dim, R0_dim, R_dim;
} nbf_dimensional;

typedef struct nbf_nondim_diagnostics {
  double L;
  double lambda_chi;
  double p_scale;
  double eps;
  int quasi_steady_warning;
  double reference_eps_taxis_estimate;
  double reference_eps_rounded;
} nbf_nondim_diagnostics;

typedef struct nbf_steady_summary {
  double A1, A2, C1, C2, apopt;
} nbf_steady_summary;

typedef struct nbf_steady_point {
  double sigma, dsigma, d2sigma;
  double p, dp;
  double E, F, dE, dF;
} nbf_steady_point;

/* beta -> infinity, R0 -> 0 limits. F_inf is NaN for r < R0. */
typedef struct nbf_steady_limit_point {
  double E0, E_inf, F_inf;
  double sigma, dsigma, apopt, p, dp;
} nbf_steady_limit_point;

typedef struct nbf_mode_point {
  double Q, dQ;
  double Q_coeff, dQ_coeff;
  double G, dG, G0, Ginf;
} nbf_mode_point;

typedef struct nbf_mode_coefficients {
  int l;
  double B1, B2, forcing;
} nbf_mode_coefficients;

typedef struct nbf_bifurcation {
  int l;
  double chi;
  double P_l; /* NaN when degenerate */
  double L1, L2, P_l_regrouped;
  int translation_mode;
  int degenerate;
  double necrosis_I, necrosis_II, surface_tension, chemotaxis;
  double nutrient_at_boundary, apoptosis_term;
  double lambda_term, lambda_q_outer, lambda_necrosis_I, lambda_necrosis_II;
} nbf_bifurcation;

typedef struct nbf_l2_record {
  double shell_eps, R0, assumption_gap;
  int assumption_violated, positive, increasing, violated_l;
  double max_deviation, relative_deviation;
} nbf_l2_record;

typedef struct nbf_comparison {
  int grid_n;
  double max_rel_err;
  double conv_order;
} nbf_comparison;

typedef struct nbf_steady nbf_steady;
typedef struct nbf_mode nbf_mode;

NBF_API const char* nbf_version(void);
NBF_API const char* nbf_status_name(nbf_status s);
/* Message of the last failing call on this thread; empty after success. */
NBF_API const char* nbf_last_error_message(void);

NBF_API nbf_status nbf_params_default(nbf_params* out);
NBF_API nbf_status nbf_params_validate(const nbf_params* p);
NBF_API nbf_status nbf_dimensional_default(nbf_dimensional* out);
NBF_API nbf_status nbf_nondimensionalize(const nbf_dimensional* d, nbf_params* out,
                                         nbf_nondim_diagnostics* diag);

NBF_API nbf_status nbf_steady_create(const nbf_params* p, nbf_steady** out);
NBF_API void nbf_steady_destroy(nbf_steady* s);
NBF_API nbf_status nbf_steady_summary_get(const nbf_steady* s, nbf_steady_summary* out);
/* Pressure uses the bundle's prolif. */
NBF_API nbf_status nbf_steady_eval(const nbf_steady* s, double r, nbf_steady_point* out);
NBF_API nbf_status nbf_steady_limits(const nbf_params* p, double r, nbf_steady_limit_point* out);
NBF_API nbf_status nbf_apoptosis_of_radius(const nbf_params* p, double R, double* out);
NBF_API nbf_status nbf_solve_radius(const nbf_params* p, double apopt_target, double lo, double hi,
                                    double* R_out);

NBF_API nbf_status nbf_mode_create(const nbf_steady* s, int l, nbf_mode** out);
NBF_API void nbf_mode_destroy(nbf_mode* m);
NBF_API nbf_status nbf_mode_eval(const nbf_mode* m, double r, nbf_mode_point* out);
NBF_API nbf_status nbf_mode_coefficients_get(const nbf_mode* m, nbf_mode_coefficients* out);
/* Limiting Q_l and Q_l' for l >= 2. */
NBF_API nbf_status nbf_mode_limits(int l, double R, double r, double* q, double* dq);

NBF_API nbf_status nbf_bifurcation_point(const nbf_steady* s, int l, nbf_bifurcation* out);
NBF_API nbf_status nbf_bifurcation_function(const nbf_steady* s, int l, double prolif,
                                            double* direct, double* linear);
NBF_API nbf_status nbf_limit_bifurcation_point(int l, double R, double g_inv, double* out);
/* rows holds n_chi * (l_hi - l_lo + 1) entries, chi-major; monotone and
   first_descent hold n_chi entries each and may be NULL. Degenerate rows are
   flagged, not fatal. jobs <= 0 means hardware concurrency. */
NBF_API nbf_status nbf_bifurcation_scan(const nbf_params* p, const double* chis, size_t n_chi, int l_lo,
                                        int l_hi, int jobs, nbf_bifurcation* rows, int* monotone,
                                        int* first_descent);

NBF_API nbf_status nbf_l2_check(const nbf_params* p, const double* shell_eps, size_t n, int l_max,
                                nbf_l2_record* out, double* abs_order, double* rel_order);

/* quantity: "sigma", "pressure" or "Q" (with l). */
NBF_API nbf_status nbf_oracle_check(const nbf_params* p, const char* quantity, int l, int n,
                                    nbf_comparison* out);

/* Runs the verification suites. options_json may be NULL. On success
   *report_json is a heap string to release with nbf_free_string and
   *all_passed is 1 iff every suite passed. */
NBF_API nbf_status nbf_verify(const char* options_json, char** report_json, int* all_passed);
/* Suite names, one per line; free with nbf_free_string. */
NBF_API nbf_status nbf_verify_suite_names(char** out);
NBF_API void nbf_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif
