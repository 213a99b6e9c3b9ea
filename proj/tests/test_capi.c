/* Exercises the shared library strictly through its C header. */
#include "nevlab/nevlab.h"

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                                 \
    do {                                                                             \
        if (!(cond)) {                                                               \
            fprintf(stderr, "%s:%d: expectation failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                              \
        }                                                                            \
    } while (0)

#define NEAR(a, b, tol) EXPECT(fabs((a) - (b)) <= (tol))

static const char* kExp =
    "n: 1\n"
    "sigma: 0\n"
    "K: 0.5\n"
    "components:\n"
    "  - type: exppoly\n"
    "    P: [[0, 0], [1, 0]]\n"
    "  - type: exppoly\n"
    "    P: []\n";

static void test_curve(void)
{
    nl_curve* f = NULL;
    EXPECT(nl_curve_parse(kExp, &f) == NL_OK);
    EXPECT(nl_curve_dimension(f) == 1);
    EXPECT(nl_curve_sigma(f) == 0.0);
    double K = 0.0;
    EXPECT(nl_curve_declared_K(f, &K) == 1 && K == 0.5);

    double v = 0.0;
    EXPECT(nl_curve_spherical_derivative(f, 0.0, 0.0, &v) == NL_OK);
    NEAR(v, 0.5, 1e-15);
    EXPECT(nl_curve_log_norm(f, 0.0, 0.0, &v) == NL_OK);
    NEAR(v, 0.5 * log(2.0), 1e-15);

    double ta = 0.0, tj = 0.0;
    EXPECT(nl_characteristic_area(f, 5.0, 1e-8, &ta) == NL_OK);
    EXPECT(nl_characteristic_jensen(f, 5.0, 1e-8, &tj) == NL_OK);
    NEAR(ta, tj, 1e-6);
    EXPECT(nl_counting_function(f, 5.0, 1e-8, &v) == NL_OK);
    EXPECT(v > 0.0);
    EXPECT(nl_reduced_characteristic(f, 5.0, 1e-8, &v) == NL_OK);
    EXPECT(v == 0.0);

    double s_hat = -1.0, k_hat = -1.0;
    EXPECT(nl_curve_estimate_growth(f, 2.0, 20.0, 6, &s_hat, &k_hat) == NL_OK);
    NEAR(k_hat, 0.5, 1e-6);

    const double radii[] = {1.0, 2.0, 4.0};
    nl_table* t = NULL;
    EXPECT(nl_table_compute(f, radii, 3, 1e-8, &t) == NL_OK);
    EXPECT(nl_table_rows(t) == 3);
    double r, a, j, n;
    EXPECT(nl_table_row(t, 2, &r, &a, &j, &n) == NL_OK && r == 4.0);
    EXPECT(nl_table_row(t, 3, &r, &a, &j, &n) == NL_ERR_ARGUMENT);
    char* csv = NULL;
    EXPECT(nl_table_csv(t, &csv) == NL_OK);
    EXPECT(csv && strncmp(csv, "r,T_area,T_jensen,n_t\n", 22) == 0);
    nl_string_free(csv);
    nl_table_free(t);

    nl_curve* g = NULL;
    EXPECT(nl_curve_preprocess_zeros(f, 1.0, 0.0, &g) == NL_ERR_VALIDATION);
    EXPECT(g == NULL);

    nl_report* rep = NULL;
    const double grid[] = {1.0, 5.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0};
    EXPECT(nl_verify_bound(f, grid, 8, 0.01, 1e-8, &rep) == NL_OK);
    EXPECT(nl_report_ok(rep) == 1);
    char* js = NULL;
    EXPECT(nl_report_json(rep, &js) == NL_OK && strstr(js, "\"theorem\": true") != NULL);
    nl_string_free(js);
    nl_report_free(rep);
    nl_curve_free(f);
}

static void test_errors(void)
{
    nl_curve* f = NULL;
    const char* bad =
        "n: 1\n"
        "sigma: 0\n"
        "components:\n"
        "  - type: exppoly\n"
        "    P: [[0, 0], [1, 0]]\n"
        "  - type: poly\n"
        "    Q: [[1, 0]]\n";
    EXPECT(nl_curve_parse(bad, &f) == NL_ERR_PARSE);
    EXPECT(f == NULL);
    EXPECT(nl_last_error_line() == 6);
    EXPECT(strstr(nl_last_error(), "component 1 must be nonvanishing") != NULL);
    EXPECT(nl_curve_load("/nonexistent.yaml", &f) == NL_ERR_PARSE);
    EXPECT(nl_curve_parse(NULL, &f) == NL_ERR_ARGUMENT);
    EXPECT(strcmp(nl_status_name(NL_ERR_BUDGET), "numerical budget exceeded") == 0);
    EXPECT(strlen(nl_version()) > 0);
    nl_curve_free(NULL);
}

static void test_locus(void)
{
    /* P_1 = z^2, P_2 = -z^2 */
    const size_t lengths[] = {3, 3};
    const double coeffs[] = {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0};
    nl_locus* loc = NULL;
    EXPECT(nl_locus_trace_exponents(2, lengths, coeffs, 0.0, 50.0, &loc) == NL_OK);
    NEAR(nl_locus_r0(loc), 2.0, 1e-14);
    EXPECT(nl_locus_branch_count(loc) == 4);
    int i, j, act;
    double b, c;
    EXPECT(nl_locus_branch_info(loc, 0, &i, &j, &b, &c, &act) == NL_OK);
    EXPECT(i == 1 && j == 2 && b == 1.0 && act == 1);
    NEAR(c, 2.0 / M_PI, 1e-14);
    double bf, cf;
    EXPECT(nl_locus_branch_asymptotics(loc, 0, &bf, &cf) == NL_OK);
    NEAR(bf, 1.0, 0.05);
    double nu = 0.0;
    EXPECT(nl_locus_riesz(loc, 10.0, &nu) == NL_OK);
    NEAR(nu, 4.0 * (100.0 - 4.0) / M_PI, 1e-4);
    EXPECT(nl_locus_riesz(loc, 80.0, &nu) == NL_ERR_VALIDATION);
    char* s = NULL;
    EXPECT(nl_locus_branch_csv(loc, 1, &s) == NL_OK && strncmp(s, "re,im,arclen,density\n", 21) == 0);
    nl_string_free(s);
    EXPECT(nl_locus_branch_csv(loc, 9, &s) == NL_ERR_ARGUMENT);
    nl_locus_free(loc);

    const double same[] = {0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0};
    EXPECT(nl_locus_trace_exponents(2, lengths, same, 0.0, 50.0, &loc) == NL_ERR_LOCUS);
    EXPECT(strstr(nl_last_error(), "locus empty") != NULL);

    long count = 0, bound = 0;
    int ok = 0;
    EXPECT(nl_count_branch_bound(2, lengths, coeffs, 0.0, &count, &bound, &ok) == NL_OK);
    EXPECT(count == 4 && bound == 4 && ok == 1);
}

static void test_lemmas_and_constants(void)
{
    double v, th;
    EXPECT(nl_green_min_normal_derivative(0.5, 0.0, &v, &th) == NL_OK);
    NEAR(v, 1.0 / 3.0, 1e-9);
    NEAR(nl_green_disc(0.0, 0.0, 0.5, 0.0), log(2.0), 1e-15);
    nl_harness* h = NULL;
    EXPECT(nl_harness_run(7, 100, &h) == NL_OK);
    EXPECT(nl_harness_failures(h) == 0);
    double m1, m2;
    EXPECT(nl_harness_min_margins(h, &m1, &m2) == NL_OK && m1 >= -1e-8 && m2 >= -1e-8);
    nl_harness_free(h);
    NEAR(nl_theorem_constant(1, 0.0, 0.01), 28.02, 1e-12);
    NEAR(nl_prop4_bound(1, 0.0, 1.0, 1.0), 24.0, 1e-12);
}

int main(void)
{
    test_curve();
    test_errors();
    test_locus();
    test_lemmas_and_constants();
    if (failures)
        fprintf(stderr, "%d expectation(s) failed\n", failures);
    else
        printf("all C interface checks passed\n");
    return failures ? 1 : 0;
}
