/* C interface to the nevlab shared library.
 *
 * Every object is an opaque handle released by its matching *_free function. Functions that can
 * fail return an nl_status; on failure nl_last_error() holds a message for the calling thread.
 * Strings returned through char** are owned by the caller and released with nl_string_free.
 * Polynomials cross the boundary as interleaved (re, im) coefficient arrays in ascending powers.
 */
#ifndef NEVLAB_H
#define NEVLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#  ifdef NEVLAB_BUILDING
#    define NEVLAB_API __declspec(dllexport)
#  else
#    define NEVLAB_API __declspec(dllimport)
#  endif
#else
#  define NEVLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nl_status {
    NL_OK = 0,
    NL_ERR_ARGUMENT = 1,   /* null handle or out-of-range argument */
    NL_ERR_PARSE = 2,      /* curve specification unreadable or invalid; see nl_last_error_line */
    NL_ERR_VALIDATION = 3, /* input violates a documented invariant */
    NL_ERR_BUDGET = 4,     /* quadrature did not reach tolerance within its node budget */
    NL_ERR_LOCUS = 5,      /* branch continuation or asymptotic fit failed */
    NL_ERR_INTERNAL = 6
} nl_status;

typedef struct nl_curve nl_curve;
typedef struct nl_table nl_table;
typedef struct nl_locus nl_locus;
typedef struct nl_harness nl_harness;
typedef struct nl_report nl_report;

NEVLAB_API const char* nl_version(void);
NEVLAB_API const char* nl_last_error(void);
/* 1-based line of the last parse error, 0 when unknown. */
NEVLAB_API int nl_last_error_line(void);
NEVLAB_API const char* nl_status_name(nl_status status);
NEVLAB_API void nl_string_free(char* s);

/* ---- curves ---- */
NEVLAB_API nl_status nl_curve_load(const char* path, nl_curve** out);
NEVLAB_API nl_status nl_curve_parse(const char* text, nl_curve** out);
NEVLAB_API void nl_curve_free(nl_curve* curve);
NEVLAB_API int nl_curve_dimension(const nl_curve* curve);
NEVLAB_API double nl_curve_sigma(const nl_curve* curve);
/* Returns 1 and writes K when the specification declares it, 0 otherwise. */
NEVLAB_API int nl_curve_declared_K(const nl_curve* curve, double* K);
/* Replaces f_0 by f_0 + c f_1 (see documentation for the supported cases). */
NEVLAB_API nl_status nl_curve_preprocess_zeros(const nl_curve* curve, double c_re, double c_im, nl_curve** out);

NEVLAB_API nl_status nl_curve_log_norm(const nl_curve* curve, double re, double im, double* out);
NEVLAB_API nl_status nl_curve_spherical_derivative(const nl_curve* curve, double re, double im, double* out);
NEVLAB_API nl_status nl_curve_estimate_growth(const nl_curve* curve, double r_min, double r_max, int circles,
                                              double* sigma_hat, double* K_hat);

/* ---- characteristic ---- */
NEVLAB_API nl_status nl_characteristic_area(const nl_curve* curve, double r, double tol, double* out);
NEVLAB_API nl_status nl_characteristic_jensen(const nl_curve* curve, double r, double tol, double* out);
NEVLAB_API nl_status nl_counting_function(const nl_curve* curve, double t, double tol, double* out);
NEVLAB_API nl_status nl_reduced_characteristic(const nl_curve* curve, double r, double tol, double* out);

NEVLAB_API nl_status nl_table_compute(const nl_curve* curve, const double* radii, size_t count, double tol,
                                      nl_table** out);
NEVLAB_API void nl_table_free(nl_table* table);
NEVLAB_API size_t nl_table_rows(const nl_table* table);
NEVLAB_API nl_status nl_table_row(const nl_table* table, size_t row, double* r, double* T_area, double* T_jensen,
                                  double* n_t);
NEVLAB_API nl_status nl_table_csv(const nl_table* table, char** out);
NEVLAB_API nl_status nl_table_json(const nl_table* table, char** out);

/* ---- equal-value locus of max Re P_j ---- */
/* Traces the locus of the curve's exponents P_1..P_n from the regularity radius out to
 * max(r_max, 4 r0). */
NEVLAB_API nl_status nl_locus_trace(const nl_curve* curve, double r_max, nl_locus** out);
/* Same for explicit exponents: poly k has lengths[k] coefficients taken in order from coeffs.
 * r0 <= 0 selects the regularity radius. */
NEVLAB_API nl_status nl_locus_trace_exponents(size_t count, const size_t* lengths, const double* coeffs, double r0,
                                              double r_max, nl_locus** out);
NEVLAB_API void nl_locus_free(nl_locus* locus);
NEVLAB_API double nl_locus_r0(const nl_locus* locus);
NEVLAB_API size_t nl_locus_branch_count(const nl_locus* locus);
NEVLAB_API nl_status nl_locus_branch_info(const nl_locus* locus, size_t k, int* i, int* j, double* b, double* c,
                                          int* active);
/* Symbolic (b, c) validated against the fitted trace asymptotics. */
NEVLAB_API nl_status nl_locus_branch_asymptotics(const nl_locus* locus, size_t k, double* b_fit, double* c_fit);
NEVLAB_API nl_status nl_locus_riesz(const nl_locus* locus, double t, double* out);
NEVLAB_API nl_status nl_locus_branch_csv(const nl_locus* locus, size_t k, char** out);
NEVLAB_API nl_status nl_locus_json(const nl_locus* locus, char** out);
NEVLAB_API nl_status nl_count_branch_bound(size_t count, const size_t* lengths, const double* coeffs, double sigma,
                                           long* branches, long* bound, int* ok);

/* ---- potential theory ---- */
NEVLAB_API double nl_green_disc(double z_re, double z_im, double zeta_re, double zeta_im);
NEVLAB_API nl_status nl_green_min_normal_derivative(double zeta_re, double zeta_im, double* value, double* theta);
NEVLAB_API nl_status nl_harness_run(uint64_t seed, int count, nl_harness** out);
NEVLAB_API void nl_harness_free(nl_harness* harness);
NEVLAB_API size_t nl_harness_failures(const nl_harness* harness);
NEVLAB_API nl_status nl_harness_min_margins(const nl_harness* harness, double* lemma1, double* lemma2);
NEVLAB_API nl_status nl_harness_json(const nl_harness* harness, char** out);

/* ---- growth bound ---- */
NEVLAB_API double nl_theorem_constant(int n, double sigma, double epsilon);
NEVLAB_API double nl_prop4_bound(int n, double sigma, double K, double r);
NEVLAB_API nl_status nl_verify_bound(const nl_curve* curve, const double* radii, size_t count, double epsilon,
                                     double tol, nl_report** out);
NEVLAB_API void nl_report_free(nl_report* report);
NEVLAB_API int nl_report_ok(const nl_report* report);
NEVLAB_API nl_status nl_report_json(const nl_report* report, char** out);
NEVLAB_API nl_status nl_report_summary(const nl_report* report, char** out);

#ifdef __cplusplus
}
#endif

#endif /* NEVLAB_H */
