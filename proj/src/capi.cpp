#include "nevlab/nevlab.h"

#include "nevlab/bound.hpp"
#include "nevlab/characteristic.hpp"
#include "nevlab/error.hpp"
#include "nevlab/io.hpp"
#include "nevlab/lemmas.hpp"
#include "nevlab/locus.hpp"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

struct nl_curve {
    nevlab::HolomorphicCurve curve;
};
struct nl_table {
    nevlab::CharacteristicTable table;
};
struct nl_locus {
    nevlab::LocusSummary summary;
};
struct nl_harness {
    nevlab::HarnessReport report;
    std::uint64_t seed;
    int count;
};
struct nl_report {
    nevlab::BoundReport report;
};

namespace {

thread_local std::string last_error;
thread_local int last_line = 0;

nl_status fail(nl_status code, const std::string& msg, int line = 0)
{
    last_error = msg;
    last_line = line;
    return code;
}

template <class F>
nl_status guarded(F&& body)
{
    last_error.clear();
    last_line = 0;
    try {
        body();
        return NL_OK;
    } catch (const nevlab::ParseError& e) {
        return fail(NL_ERR_PARSE, e.what(), e.line());
    } catch (const nevlab::BudgetError& e) {
        return fail(NL_ERR_BUDGET, e.what());
    } catch (const nevlab::LocusError& e) {
        return fail(NL_ERR_LOCUS, e.what());
    } catch (const nevlab::ValidationError& e) {
        return fail(NL_ERR_VALIDATION, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(NL_ERR_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(NL_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(NL_ERR_INTERNAL, "unknown exception");
    }
}

void require(bool cond, const char* what)
{
    if (!cond)
        throw std::invalid_argument(what);
}

char* copy_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<nevlab::ComplexPoly> unpack_polys(std::size_t count, const std::size_t* lengths, const double* coeffs)
{
    require(count == 0 || lengths, "lengths must not be null");
    std::vector<nevlab::ComplexPoly> out;
    std::size_t offset = 0;
    for (std::size_t k = 0; k < count; ++k) {
        require(lengths[k] == 0 || coeffs, "coeffs must not be null");
        std::vector<nevlab::cplx> c(lengths[k]);
        for (std::size_t m = 0; m < lengths[k]; ++m, ++offset)
            c[m] = {coeffs[2 * offset], coeffs[2 * offset + 1]};
        out.emplace_back(std::move(c));
    }
    return out;
}

} // namespace

extern "C" {

const char* nl_version(void) { return "0.1.0"; }
const char* nl_last_error(void) { return last_error.c_str(); }
int nl_last_error_line(void) { return last_line; }
void nl_string_free(char* s) { std::free(s); }

const char* nl_status_name(nl_status status)
{
    switch (status) {
    case NL_OK:
        return "ok";
    case NL_ERR_ARGUMENT:
        return "invalid argument";
    case NL_ERR_PARSE:
        return "parse error";
    case NL_ERR_VALIDATION:
        return "validation error";
    case NL_ERR_BUDGET:
        return "numerical budget exceeded";
    case NL_ERR_LOCUS:
        return "locus error";
    case NL_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

nl_status nl_curve_load(const char* path, nl_curve** out)
{
    return guarded([&] {
        require(path && out, "path and out must not be null");
        *out = new nl_curve{nevlab::load_curve_spec(path)};
    });
}

nl_status nl_curve_parse(const char* text, nl_curve** out)
{
    return guarded([&] {
        require(text && out, "text and out must not be null");
        *out = new nl_curve{nevlab::parse_curve_spec(text)};
    });
}

void nl_curve_free(nl_curve* curve) { delete curve; }
int nl_curve_dimension(const nl_curve* curve) { return curve ? curve->curve.dimension() : 0; }
double nl_curve_sigma(const nl_curve* curve) { return curve ? curve->curve.sigma() : 0.0; }

int nl_curve_declared_K(const nl_curve* curve, double* K)
{
    if (!curve || !curve->curve.K())
        return 0;
    if (K)
        *K = *curve->curve.K();
    return 1;
}

nl_status nl_curve_preprocess_zeros(const nl_curve* curve, double c_re, double c_im, nl_curve** out)
{
    return guarded([&] {
        require(curve && out, "curve and out must not be null");
        *out = new nl_curve{nevlab::preprocess_zeros(curve->curve, {c_re, c_im})};
    });
}

nl_status nl_curve_log_norm(const nl_curve* curve, double re, double im, double* out)
{
    return guarded([&] {
        require(curve && out, "curve and out must not be null");
        *out = nevlab::log_norm(curve->curve, {re, im});
    });
}

nl_status nl_curve_spherical_derivative(const nl_curve* curve, double re, double im, double* out)
{
    return guarded([&] {
        require(curve && out, "curve and out must not be null");
        *out = nevlab::spherical_derivative(curve->curve, {re, im});
    });
}

nl_status nl_curve_estimate_growth(const nl_curve* curve, double r_min, double r_max, int circles, double* sigma_hat,
                                   double* K_hat)
{
    return guarded([&] {
        require(curve && sigma_hat && K_hat, "null argument");
        const auto est = nevlab::estimate_growth(curve->curve, r_min, r_max, circles);
        *sigma_hat = est.sigma_hat;
        *K_hat = est.K_hat;
    });
}

nl_status nl_characteristic_area(const nl_curve* curve, double r, double tol, double* out)
{
    return guarded([&] {
        require(curve && out, "curve and out must not be null");
        *out = nevlab::characteristic_area(curve->curve, r, tol);
    });
}

nl_status nl_characteristic_jensen(const nl_curve* curve, double r, double tol, double* out)
{
    return guarded([&] {
        require(curve && out, "curve and out must not be null");
        *out = nevlab::characteristic_jensen(curve->curve, r, tol);
    });
}

nl_status nl_counting_function(const nl_curve* curve, double t, double tol, double* out)
{
    return guarded([&] {
        require(curve && out, "curve and out must not be null");
        *out = nevlab::counting_function(curve->curve, t, tol);
    });
}

nl_status nl_reduced_characteristic(const nl_curve* curve, double r, double tol, double* out)
{
    return guarded([&] {
        require(curve && out, "curve and out must not be null");
        *out = nevlab::reduced_characteristic(curve->curve, r, tol);
    });
}

nl_status nl_table_compute(const nl_curve* curve, const double* radii, size_t count, double tol, nl_table** out)
{
    return guarded([&] {
        require(curve && out && (radii || count == 0), "null argument");
        *out = new nl_table{nevlab::characteristic_table(curve->curve, std::span<const double>(radii, count), tol)};
    });
}

void nl_table_free(nl_table* table) { delete table; }
size_t nl_table_rows(const nl_table* table) { return table ? table->table.radii.size() : 0; }

nl_status nl_table_row(const nl_table* table, size_t row, double* r, double* T_area, double* T_jensen, double* n_t)
{
    return guarded([&] {
        require(table && row < table->table.radii.size(), "row out of range");
        if (r)
            *r = table->table.radii[row];
        if (T_area)
            *T_area = table->table.T_area[row];
        if (T_jensen)
            *T_jensen = table->table.T_jensen[row];
        if (n_t)
            *n_t = table->table.n_counting[row];
    });
}

nl_status nl_table_csv(const nl_table* table, char** out)
{
    return guarded([&] {
        require(table && out, "null argument");
        *out = copy_string(nevlab::characteristic_csv(table->table));
    });
}

nl_status nl_table_json(const nl_table* table, char** out)
{
    return guarded([&] {
        require(table && out, "null argument");
        *out = copy_string(nevlab::characteristic_json(table->table));
    });
}

nl_status nl_locus_trace(const nl_curve* curve, double r_max, nl_locus** out)
{
    return guarded([&] {
        require(curve && out, "curve and out must not be null");
        const auto exps = curve->curve.reduced_exponents();
        const double r0 = nevlab::regularity_radius(exps);
        *out = new nl_locus{nevlab::trace_branches(exps, r0, std::max(r_max, 4.0 * r0))};
    });
}

nl_status nl_locus_trace_exponents(size_t count, const size_t* lengths, const double* coeffs, double r0, double r_max,
                                   nl_locus** out)
{
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        const auto exps = unpack_polys(count, lengths, coeffs);
        if (r0 <= 0.0)
            r0 = nevlab::regularity_radius(exps);
        *out = new nl_locus{nevlab::trace_branches(exps, r0, r_max)};
    });
}

void nl_locus_free(nl_locus* locus) { delete locus; }
double nl_locus_r0(const nl_locus* locus) { return locus ? locus->summary.r0 : 0.0; }
size_t nl_locus_branch_count(const nl_locus* locus) { return locus ? locus->summary.branches.size() : 0; }

nl_status nl_locus_branch_info(const nl_locus* locus, size_t k, int* i, int* j, double* b, double* c, int* active)
{
    return guarded([&] {
        require(locus && k < locus->summary.branches.size(), "branch index out of range");
        const auto& br = locus->summary.branches[k];
        if (i)
            *i = br.pair.first;
        if (j)
            *j = br.pair.second;
        if (b)
            *b = br.b;
        if (c)
            *c = br.c;
        if (active)
            *active = br.active ? 1 : 0;
    });
}

nl_status nl_locus_branch_asymptotics(const nl_locus* locus, size_t k, double* b_fit, double* c_fit)
{
    return guarded([&] {
        require(locus && k < locus->summary.branches.size(), "branch index out of range");
        const auto a = nevlab::branch_asymptotics(locus->summary.branches[k], locus->summary.r0);
        if (b_fit)
            *b_fit = a.b_fit;
        if (c_fit)
            *c_fit = a.c_fit;
    });
}

nl_status nl_locus_riesz(const nl_locus* locus, double t, double* out)
{
    return guarded([&] {
        require(locus && out, "null argument");
        *out = nevlab::riesz_of_max(locus->summary, t);
    });
}

nl_status nl_locus_branch_csv(const nl_locus* locus, size_t k, char** out)
{
    return guarded([&] {
        require(locus && out && k < locus->summary.branches.size(), "branch index out of range");
        *out = copy_string(nevlab::branch_csv(locus->summary.branches[k]));
    });
}

nl_status nl_locus_json(const nl_locus* locus, char** out)
{
    return guarded([&] {
        require(locus && out, "null argument");
        *out = copy_string(nevlab::locus_json(locus->summary));
    });
}

nl_status nl_count_branch_bound(size_t count, const size_t* lengths, const double* coeffs, double sigma,
                                long* branches, long* bound, int* ok)
{
    return guarded([&] {
        const auto exps = unpack_polys(count, lengths, coeffs);
        const auto bc = nevlab::count_branch_bound(exps, sigma);
        if (branches)
            *branches = bc.count;
        if (bound)
            *bound = bc.bound;
        if (ok)
            *ok = bc.ok ? 1 : 0;
    });
}

double nl_green_disc(double z_re, double z_im, double zeta_re, double zeta_im)
{
    return nevlab::green_disc({z_re, z_im}, {zeta_re, zeta_im});
}

nl_status nl_green_min_normal_derivative(double zeta_re, double zeta_im, double* value, double* theta)
{
    return guarded([&] {
        require(std::abs(nevlab::cplx(zeta_re, zeta_im)) < 1.0, "zeta must lie in the open unit disc");
        const auto m = nevlab::minimize_green_normal_derivative({zeta_re, zeta_im});
        if (value)
            *value = m.value;
        if (theta)
            *theta = m.theta;
    });
}

nl_status nl_harness_run(uint64_t seed, int count, nl_harness** out)
{
    return guarded([&] {
        require(out && count >= 0, "invalid harness arguments");
        *out = new nl_harness{nevlab::run_lemma_harness(seed, count), seed, count};
    });
}

void nl_harness_free(nl_harness* harness) { delete harness; }
size_t nl_harness_failures(const nl_harness* harness) { return harness ? harness->report.failures.size() : 0; }

nl_status nl_harness_min_margins(const nl_harness* harness, double* lemma1, double* lemma2)
{
    return guarded([&] {
        require(harness != nullptr, "null harness");
        if (lemma1)
            *lemma1 = harness->report.lemma1_min;
        if (lemma2)
            *lemma2 = harness->report.lemma2_min;
    });
}

nl_status nl_harness_json(const nl_harness* harness, char** out)
{
    return guarded([&] {
        require(harness && out, "null argument");
        *out = copy_string(nevlab::harness_json(harness->report, harness->seed, harness->count));
    });
}

double nl_theorem_constant(int n, double sigma, double epsilon) { return nevlab::theorem_constant(n, sigma, epsilon); }
double nl_prop4_bound(int n, double sigma, double K, double r) { return nevlab::prop4_bound(n, sigma, K, r); }

nl_status nl_verify_bound(const nl_curve* curve, const double* radii, size_t count, double epsilon, double tol,
                          nl_report** out)
{
    return guarded([&] {
        require(curve && out && radii, "null argument");
        *out = new nl_report{
            nevlab::verify_theorem(curve->curve, std::span<const double>(radii, count), epsilon, tol)};
    });
}

void nl_report_free(nl_report* report) { delete report; }
int nl_report_ok(const nl_report* report) { return report && report->report.all_ok() ? 1 : 0; }

nl_status nl_report_json(const nl_report* report, char** out)
{
    return guarded([&] {
        require(report && out, "null argument");
        *out = copy_string(nevlab::bound_report_json(report->report));
    });
}

nl_status nl_report_summary(const nl_report* report, char** out)
{
    return guarded([&] {
        require(report && out, "null argument");
        *out = copy_string(nevlab::bound_report_summary(report->report));
    });
}

} // extern "C"
