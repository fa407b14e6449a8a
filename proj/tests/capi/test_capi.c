/* Exercises the C interface from plain C: handle lifetime, status codes,
   error messages and the numeric entry points. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "necrobifurc/necrobifurc.h"

static int failures = 0;

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static void test_steady_roundtrip(void) {
  nbf_params p;
  nbf_steady* s = NULL;
  nbf_steady_summary sum;
  nbf_steady_point pt;
  CHECK(nbf_params_default(&p) == NBF_OK);
  CHECK(p.beta == 1.0 && p.sigma_ul == 0.5 && p.R0 == 0.5 && p.R == 2.0);
  CHECK(nbf_steady_create(&p, &s) == NBF_OK);
  CHECK(s != NULL);
  CHECK(nbf_steady_summary_get(s, &sum) == NBF_OK);
  CHECK(sum.apopt > 0.0);
  CHECK(nbf_steady_eval(s, p.R0, &pt) == NBF_OK);
  CHECK(fabs(pt.sigma - p.sigma_ul) < 1e-14);
  CHECK(nbf_steady_eval(s, p.R, &pt) == NBF_OK);
  /* Robin condition sigma' + beta (sigma - 1) = 0 at R. */
  CHECK(fabs(pt.dsigma + p.beta * (pt.sigma - 1.0)) < 1e-13);
  CHECK(nbf_steady_eval(s, 10.0, &pt) == NBF_ERR_DOMAIN);
  CHECK(strlen(nbf_last_error_message()) > 0);
  nbf_steady_destroy(s);
}

static void test_invalid_params(void) {
  nbf_params p;
  nbf_steady* s = (nbf_steady*)&p;
  nbf_params_default(&p);
  p.R = 0.25;
  CHECK(nbf_params_validate(&p) == NBF_ERR_DOMAIN);
  CHECK(nbf_steady_create(&p, &s) == NBF_ERR_DOMAIN);
  CHECK(s == NULL);
  CHECK(nbf_steady_create(NULL, &s) == NBF_ERR_NULL_ARGUMENT);
  CHECK(strcmp(nbf_status_name(NBF_ERR_DEGENERATE), "degenerate_denominator") == 0);
  p.R = 2.0;
  p.apopt_source = 7;
  CHECK(nbf_steady_create(&p, &s) == NBF_ERR_MISUSE);
}

static void test_modes_and_bifurcation(void) {
  nbf_params p;
  nbf_steady* s = NULL;
  nbf_mode* m = NULL;
  nbf_mode_point mp;
  nbf_bifurcation b0, b2;
  double direct = 0.0, linear = 0.0;
  nbf_params_default(&p);
  CHECK(nbf_steady_create(&p, &s) == NBF_OK);
  CHECK(nbf_mode_create(s, 3, &m) == NBF_OK);
  CHECK(nbf_mode_eval(m, 1.3, &mp) == NBF_OK);
  CHECK(fabs(mp.Q - mp.Q_coeff) <= 1e-10 * fabs(mp.Q));
  CHECK(mp.G >= 0.0 && mp.dG >= 0.0);
  nbf_mode_destroy(m);
  CHECK(nbf_bifurcation_point(s, 0, &b0) == NBF_OK);
  CHECK(fabs(b0.P_l) <= 1e-12);
  CHECK(nbf_bifurcation_point(s, 2, &b2) == NBF_OK);
  CHECK(nbf_bifurcation_function(s, 2, b2.P_l, &direct, &linear) == NBF_OK);
  CHECK(fabs(direct) <= 1e-10 * fabs(b2.L1));
  CHECK(fabs(linear) <= 1e-10 * fabs(b2.L1));
  nbf_steady_destroy(s);
}

static void test_scan(void) {
  nbf_params p;
  double chis[2] = {1.0, 2.0};
  nbf_bifurcation rows[2 * 5];
  int monotone[2], first[2];
  nbf_params_default(&p);
  CHECK(nbf_bifurcation_scan(&p, chis, 2, 2, 6, 2, rows, monotone, first) == NBF_OK);
  CHECK(rows[0].chi == 1.0 && rows[0].l == 2 && rows[9].chi == 2.0 && rows[9].l == 6);
  CHECK(nbf_bifurcation_scan(&p, chis, 0, 2, 6, 1, rows, NULL, NULL) == NBF_ERR_MISUSE);
}

static void test_limits(void) {
  double v = 0.0, q = 0.0, dq = 0.0;
  CHECK(nbf_limit_bifurcation_point(2, 2.0, 1.0, &v) == NBF_OK);
  CHECK(v > 0.0);
  CHECK(nbf_mode_limits(2, 2.0, 1.0, &q, &dq) == NBF_OK);
  CHECK(nbf_mode_limits(1, 2.0, 1.0, &q, &dq) == NBF_ERR_DOMAIN);
}

static void test_verify_entry(void) {
  char* report = NULL;
  char* names = NULL;
  int passed = 0;
  CHECK(nbf_verify("{\"suites\": [\"bessel-identities\"]}", &report, &passed) == NBF_OK);
  CHECK(passed == 1);
  CHECK(report != NULL && strstr(report, "bessel-identities") != NULL);
  nbf_free_string(report);
  report = NULL;
  CHECK(nbf_verify("{\"suites\": [\"bessel-identities\"], \"self_test_negative\": true}", &report, &passed) == NBF_OK);
  CHECK(passed == 0);
  nbf_free_string(report);
  CHECK(nbf_verify("{\"suites\": [\"no-such-suite\"]}", &report, &passed) == NBF_ERR_MISUSE);
  CHECK(nbf_verify("{not json", &report, &passed) == NBF_ERR_MISUSE);
  CHECK(nbf_verify_suite_names(&names) == NBF_OK);
  CHECK(strstr(names, "expansion-2d") != NULL);
  nbf_free_string(names);
}

int main(void) {
  test_steady_roundtrip();
  test_invalid_params();
  test_modes_and_bifurcation();
  test_scan();
  test_limits();
  test_verify_entry();
  if (failures != 0) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("all C API checks passed (library %s)\n", nbf_version());
  return 0;
}
