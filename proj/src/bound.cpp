#include "nevlab/bound.hpp"

#include "nevlab/error.hpp"
#include "nevlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nevlab {

namespace {

std::string point_text(cplx z)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

std::size_t tail_start(std::size_t size)
{
    if (size == 0)
        return 0;
    const auto skip = static_cast<std::size_t>(std::floor(static_cast<double>(size) * (1.0 - kTailFraction)));
    return std::min(skip, size - 1);
}

} // namespace

HolomorphicCurve preprocess_zeros(const HolomorphicCurve& f, cplx c)
{
    const CurveComponent& f0 = f.component(0);
    if (!f0.is_exp_poly())
        return f;
    const ComplexPoly delta = f0.exponent_poly() - f.component(1).exponent_poly();
    if (delta.degree() >= 1)
        throw ValidationError("f_0 + c f_1 with nonconstant P_0 - P_1 has no closed form here; "
                              "supply f_0 with zeros directly (type poly or polyexp)");
    const cplx amplitude = std::exp(delta.coeff(0)) + c;
    if (std::abs(amplitude) <= 1e-14 * (1.0 + std::abs(c)))
        throw ValidationError("f_0 + c f_1 vanishes identically; choose another c");
    throw ValidationError("f_0 + c f_1 is a constant multiple of f_1 and still zero-free; "
                          "supply f_0 with zeros directly (type poly or polyexp)");
}

Prop1Result prop1_check(const HolomorphicCurve& f, std::span<const TiePoint> points)
{
    Prop1Result res;
    res.worst_margin = std::numeric_limits<double>::infinity();
    res.worst_scaled = std::numeric_limits<double>::infinity();
    const int n = f.dimension();
    for (const auto& p : points) {
        if (p.m == p.k || p.m < 0 || p.k < 0 || p.m > n || p.k > n)
            throw ValidationError("tie point " + point_text(p.z) + " has invalid indices");
        std::vector<double> u;
        for (const auto& c : f.components())
            u.push_back(eval_component(c, p.z).log_modulus);
        const double top = *std::max_element(u.begin(), u.end());
        const double eta = tie_tolerance(top);
        const double um = u[static_cast<std::size_t>(p.m)];
        const double uk = u[static_cast<std::size_t>(p.k)];
        if (um < top - eta || uk < top - eta)
            throw ValidationError("point " + point_text(p.z) + " is not a tie of the two largest u_j (indices " +
                                  std::to_string(p.m) + ", " + std::to_string(p.k) + ")");

        const double diff = std::abs(f.component(p.m).log_derivative(p.z) - f.component(p.k).log_derivative(p.z));
        const double margin = (n + 1) * spherical_derivative(f, p.z) - diff;
        const double scaled = margin / std::max(1.0, diff);
        res.worst_margin = std::min(res.worst_margin, margin);
        res.worst_scaled = std::min(res.worst_scaled, scaled);
        ++res.points;
        if (scaled < -1e-8)
            res.ok = false;
    }
    if (res.points == 0) {
        res.worst_margin = 0.0;
        res.worst_scaled = 0.0;
    }
    return res;
}

Prop2Result prop2_margin(const HolomorphicCurve& f, double K, double epsilon, std::span<const double> radii)
{
    if (!(epsilon > 0.0))
        throw ValidationError("epsilon must be positive");
    Prop2Result res;
    const int n = f.dimension();
    const double sigma = f.sigma();
    const auto comps = f.components();
    for (double r : radii) {
        double scale = 8.0;
        for (const auto& c : comps)
            scale += c.exponent_poly().angular_derivative_bound(r) + 4.0 * std::max(0, c.amplitude_poly().degree());
        auto excess = [&](double t) {
            const cplx z = std::polar(r, t);
            double ustar = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 1; j < comps.size(); ++j)
                ustar = std::max(ustar, eval_component(comps[j], z).log_modulus);
            return log_norm(f, z) - ustar;
        };
        const auto best = periodic_max(excess, std::clamp(static_cast<long>(16.0 * scale), 512L, 1L << 18));
        res.rows.push_back({r, best.value, K * std::pow(2.0 + epsilon, sigma + 1.0) * (n + 1) * std::pow(r, sigma + 1.0)});
    }

    std::size_t first_good = res.rows.size();
    while (first_good > 0 && res.rows[first_good - 1].excess <= res.rows[first_good - 1].bound)
        --first_good;
    res.threshold =
        first_good < res.rows.size() ? res.rows[first_good].r : std::numeric_limits<double>::infinity();
    res.ok = !res.rows.empty() && first_good <= tail_start(res.rows.size());
    return res;
}

Prop3Result prop3_check(const LocusSummary& locus, int n, double sigma, double K)
{
    Prop3Result res;
    res.b = locus.b;
    res.b_ceiling = sigma;
    res.c0 = locus.c0;
    res.c0_ceiling = 3.0 * std::pow(4.0, sigma) * K * (n + 1);
    if (std::isinf(locus.b) && locus.b < 0.0)
        return res; // no active branch: both claims hold vacuously
    res.b_ok = res.b <= sigma + 1e-6;
    res.c0_ok = res.c0 <= res.c0_ceiling * (1.0 + 1e-6);
    return res;
}

Prop3Result prop3_check(const LocusSummary& locus, const HolomorphicCurve& f, double K)
{
    return prop3_check(locus, f.dimension(), f.sigma(), K);
}

double prop4_bound(int n, double sigma, double K, double r)
{
    return 6.0 * std::pow(4.0, sigma) * K * n * (n + 1.0) * (n + 1.0) / (sigma + 1.0) * std::pow(r, sigma + 1.0);
}

double theorem_constant(int n, double sigma, double epsilon)
{
    return 6.0 * std::pow(4.0, sigma) * n * (n + 1.0) * (n + 1.0) / (sigma + 1.0) +
           std::pow(2.0 + epsilon, sigma + 1.0) * (n + 1.0);
}

BoundReport verify_theorem(const HolomorphicCurve& f, std::span<const double> radii, double epsilon, double tol)
{
    if (radii.empty())
        throw ValidationError("verify_theorem needs a nonempty radius grid");
    for (std::size_t k = 0; k < radii.size(); ++k)
        if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] > radii[k - 1])))
            throw ValidationError("radius grid must be positive and strictly increasing");
    if (!(epsilon > 0.0))
        throw ValidationError("epsilon must be positive");

    BoundReport rep;
    rep.n = f.dimension();
    rep.sigma = f.sigma();
    rep.epsilon = epsilon;
    if (f.K()) {
        rep.K = *f.K();
    } else {
        const int circles = static_cast<int>(std::clamp<std::size_t>(radii.size(), 4, 12));
        const double lo = radii.front() < radii.back() ? radii.front() : 0.5 * radii.back();
        rep.K = estimate_growth(f, lo, radii.back(), circles).K_hat;
        rep.K_estimated = true;
        rep.notes.push_back("K not declared; using the finite-radius estimate");
    }
    rep.theorem_constant = theorem_constant(rep.n, rep.sigma, epsilon);
    rep.prop4_constant = prop4_bound(rep.n, rep.sigma, rep.K, 1.0);

    const std::size_t first_tail = tail_start(radii.size());
    const double slack = 1.0 + kTailSlack;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        BoundRow row;
        row.r = radii[k];
        row.tail = k >= first_tail;
        row.T_bound = rep.K * rep.theorem_constant * std::pow(row.r, rep.sigma + 1.0);
        row.T_star_bound = prop4_bound(rep.n, rep.sigma, rep.K, row.r);
        try {
            row.T = characteristic_jensen(f, row.r, tol);
            row.T_star = reduced_characteristic(f, row.r, tol);
        } catch (const Error& e) {
            rep.theorem_ok = rep.prop4_ok = false;
            rep.notes.push_back(std::string("characteristic at r = ") + std::to_string(row.r) + ": " + e.what());
            rep.rows.push_back(row);
            continue;
        }
        if (row.tail) {
            if (!(row.T <= row.T_bound * slack + 10.0 * tol))
                rep.theorem_ok = false;
            if (!(row.T_star <= row.T_star_bound * slack + 10.0 * tol))
                rep.prop4_ok = false;
        }
        rep.rows.push_back(row);
    }

    const std::vector<double> tail(radii.begin() + static_cast<std::ptrdiff_t>(first_tail), radii.end());
    try {
        const auto ties = harvest_tie_points(f, tail);
        rep.prop1 = prop1_check(f, ties);
        rep.prop1_ok = rep.prop1.ok;
    } catch (const Error& e) {
        rep.prop1_ok = false;
        rep.notes.push_back(std::string("tie-point check: ") + e.what());
    }

    try {
        rep.prop2 = prop2_margin(f, rep.K, epsilon, radii);
        rep.prop2_ok = rep.prop2.ok;
    } catch (const Error& e) {
        rep.prop2_ok = false;
        rep.notes.push_back(std::string("distance check: ") + e.what());
    }

    const auto exps = f.reduced_exponents();
    rep.branch_count = count_branch_bound(exps, rep.sigma);
    try {
        rep.r0 = regularity_radius(exps);
        rep.has_locus = true;
    } catch (const LocusError&) {
        rep.has_locus = false;
        rep.prop3.b = -std::numeric_limits<double>::infinity();
        rep.prop3.b_ceiling = rep.sigma;
        rep.prop3.c0_ceiling = 3.0 * std::pow(4.0, rep.sigma) * rep.K * (rep.n + 1);
    }
    if (rep.has_locus) {
        try {
            const double r_max = std::max(radii.back(), 4.0 * rep.r0);
            const auto locus = trace_branches(exps, rep.r0, r_max);
            rep.prop3 = prop3_check(locus, f, rep.K);
            rep.prop3_ok = rep.prop3.b_ok && rep.prop3.c0_ok && rep.branch_count.ok;
        } catch (const Error& e) {
            rep.prop3_ok = false;
            rep.notes.push_back(std::string("locus check: ") + e.what());
        }
    } else {
        rep.prop3_ok = rep.branch_count.ok;
    }
    return rep;
}

} // namespace nevlab
