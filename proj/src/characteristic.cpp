#include "nevlab/characteristic.hpp"

#include "nevlab/error.hpp"
#include "nevlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nevlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Starting node count for circle |z| = r; enough to resolve the transition layers of u and ||f'||.
long angular_nodes(std::span<const CurveComponent> f, double r)
{
    double scale = 8.0;
    for (const auto& c : f) {
        scale += c.exponent_poly().angular_derivative_bound(r);
        scale += 4.0 * std::max(0, c.amplitude_poly().degree());
    }
    return std::clamp(static_cast<long>(8.0 * scale), 64L, 1L << 21);
}

void require_positive(double r, double tol)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw ValidationError("radius must be positive and finite");
    if (!(tol > 0.0))
        throw ValidationError("tolerance must be positive");
}

/// A(s) = (1/pi) int_0^{2pi} ||f'||^2(s e^{it}) dt
double angular_mass_density(const HolomorphicCurve& f, double s, double abs_tol)
{
    if (s == 0.0) {
        const double d = spherical_derivative(f, cplx{});
        return 2.0 * d * d;
    }
    const auto res = periodic_mean(
        [&](double t) {
            const double d = spherical_derivative(f, std::polar(s, t));
            return d * d;
        },
        0.5 * abs_tol, angular_nodes(f.components(), s));
    return 2.0 * res.value;
}

} // namespace

double characteristic_jensen(const HolomorphicCurve& f, double r, double tol)
{
    require_positive(r, tol);
    auto u = [&](double t) { return log_norm(f, std::polar(r, t)); };
    double scale = 1.0;
    for (int k = 0; k < 16; ++k)
        scale = std::max(scale, std::abs(u(kTwoPi * k / 16.0)));
    const auto res = periodic_mean(u, tol * scale, angular_nodes(f.components(), r));
    return res.value - log_norm(f, cplx{});
}

double characteristic_area(const HolomorphicCurve& f, double r, double tol)
{
    require_positive(r, tol);
    // An error e in A(s) moves T by at most e r^2 / 4.
    const double inner_tol = 0.1 * tol / std::max(1.0, 0.25 * r * r);
    // s = r x^2 turns the endpoint behaviour s log(r/s) into x^3 log(1/x), which Gauss-Legendre
    // resolves with far fewer panels.
    auto integrand = [&](double x) {
        if (x <= 0.0)
            return 0.0;
        const double s = r * x * x;
        return 4.0 * r * r * x * x * x * std::log(1.0 / x) * angular_mass_density(f, s, inner_tol);
    };
    return adaptive_gauss_legendre(integrand, 0.0, 1.0, 0.5 * tol, 0.1 * tol).value;
}

double counting_function(const HolomorphicCurve& f, double t, double tol)
{
    require_positive(t, tol);
    const double inner_tol = 0.1 * tol / std::max(1.0, 0.5 * t * t);
    auto integrand = [&](double s) { return s * angular_mass_density(f, s, inner_tol); };
    return adaptive_gauss_legendre(integrand, 0.0, t, 0.5 * tol, 0.1 * tol).value;
}

double reduced_characteristic(std::span<const ComplexPoly> exponents, double r, double tol)
{
    require_positive(r, tol);
    if (exponents.empty())
        throw ValidationError("reduced characteristic needs at least one exponent");
    const int n = static_cast<int>(exponents.size());

    int pair_degree = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pair_degree = std::max(pair_degree, (exponents[i] - exponents[j]).degree());

    auto family = [&](double t, std::span<double> out) {
        const cplx z = std::polar(r, t);
        for (int j = 0; j < n; ++j)
            out[static_cast<std::size_t>(j)] = exponents[j](z).real();
    };
    // Dense seeding: a trig polynomial of degree d has at most 2d roots, but two of them can sit
    // arbitrarily close, so the scan is 16x the nominal 4d + 16.
    const int seeds = 16 * (4 * pair_degree + 16);
    auto switches = argmax_switches(family, n, seeds, std::min(1e-13, tol));

    std::vector<double> cuts;
    for (const auto& s : switches)
        cuts.push_back(s.theta);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<double> buf(static_cast<std::size_t>(n));
    auto argmax_at = [&](double t) {
        family(t, buf);
        return static_cast<int>(std::max_element(buf.begin(), buf.end()) - buf.begin());
    };

    double total = 0.0;
    if (cuts.empty()) {
        total = exponents[argmax_at(0.0)].integrate_real_part_on_arc(r, 0.0, kTwoPi);
    } else {
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            const double a = cuts[k];
            const double b = (k + 1 < cuts.size()) ? cuts[k + 1] : cuts.front() + kTwoPi;
            const int j = argmax_at(0.5 * (a + b));
            total += exponents[j].integrate_real_part_on_arc(r, a, b);
        }
    }

    double at_origin = exponents[0](cplx{}).real();
    for (int j = 1; j < n; ++j)
        at_origin = std::max(at_origin, exponents[j](cplx{}).real());
    return total / kTwoPi - at_origin;
}

double reduced_characteristic(const HolomorphicCurve& f, double r, double tol)
{
    const auto exps = f.reduced_exponents();
    return reduced_characteristic(exps, r, tol);
}

double counting_from_jensen(const HolomorphicCurve& f, double t, double rel_step, double tol)
{
    // n(t) = dT / d log t
    const double hi = characteristic_jensen(f, t * std::exp(rel_step), tol);
    const double lo = characteristic_jensen(f, t * std::exp(-rel_step), tol);
    return (hi - lo) / (2.0 * rel_step);
}

double CharacteristicTable::max_route_gap() const
{
    double gap = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k)
        gap = std::max(gap, std::abs(T_area[k] - T_jensen[k]));
    return gap;
}

CharacteristicTable characteristic_table(const HolomorphicCurve& f, std::span<const double> radii, double tol)
{
    for (std::size_t k = 0; k < radii.size(); ++k)
        if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] > radii[k - 1])))
            throw ValidationError("radii must be positive and strictly ascending");
    CharacteristicTable table;
    for (double r : radii) {
        table.radii.push_back(r);
        table.T_area.push_back(characteristic_area(f, r, tol));
        table.T_jensen.push_back(characteristic_jensen(f, r, tol));
        table.n_counting.push_back(counting_function(f, r, tol));
    }
    return table;
}

} // namespace nevlab
