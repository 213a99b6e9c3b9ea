#include "nevlab/lemmas.hpp"

#include "nevlab/error.hpp"
#include "nevlab/quadrature.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>

namespace nevlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// v = Re F(w) for boundary samples on the uniform grid: F(w) = c_0 + 2 sum_{k>=1} c_k w^k with c_k
/// the discrete Fourier coefficients. Matches the discrete Poisson sum for band-limited data and,
/// unlike it, stays finite at grid points of the boundary.
ComplexPoly fourier_extension(const std::vector<double>& samples)
{
    const int n = static_cast<int>(samples.size());
    std::vector<double> in(samples);
    std::vector<fftw_complex> out(static_cast<std::size_t>(n / 2 + 1));
    static std::mutex planner;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner);
        plan = fftw_plan_dft_r2c_1d(n, in.data(), out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner);
        fftw_destroy_plan(plan);
    }

    std::vector<cplx> coeffs(out.size());
    double biggest = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        coeffs[k] = cplx(out[k][0], out[k][1]) / static_cast<double>(n);
        if (k > 0 && !(n % 2 == 0 && static_cast<int>(k) == n / 2))
            coeffs[k] *= 2.0;
        biggest = std::max(biggest, std::abs(coeffs[k]));
    }
    // Drop the roundoff tail so evaluation cost tracks the bandwidth of the data.
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-15 * biggest)
        coeffs.pop_back();
    coeffs[0] = cplx(coeffs[0].real(), 0.0);
    return ComplexPoly(std::move(coeffs));
}

cplx unit_coords(const Disc& d, cplx z) { return (z - d.center) / d.radius; }

bool on_boundary(const Disc& d, cplx z) { return std::abs(std::abs(z - d.center) - d.radius) <= 1e-9 * d.radius; }

} // namespace

DiscHarmonic::DiscHarmonic(Representation rep, Disc disc) : rep_(std::move(rep)), disc_(disc)
{
    if (!(disc_.radius > 0.0) || !std::isfinite(disc_.radius))
        throw ValidationError("disc radius must be positive");
    if (const auto* pd = std::get_if<PoissonData>(&rep_)) {
        if (pd->samples.size() < 4)
            throw ValidationError("Poisson data needs at least 4 boundary samples");
        for (double s : pd->samples)
            if (!(s >= 0.0))
                throw ValidationError("Poisson boundary density must be nonnegative");
        fourier_ = fourier_extension(pd->samples);
    }
    if (const auto* rr = std::get_if<RealPartRational>(&rep_))
        if (rr->den.is_zero())
            throw ValidationError("rational harmonic part has a zero denominator");
}

double DiscHarmonic::value(cplx z) const
{
    return std::visit(
        [&](const auto& r) -> double {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, PoissonData>)
                return fourier_(unit_coords(disc_, z)).real();
            else if constexpr (std::is_same_v<T, RealPartPoly>)
                return r.p(z).real() + r.constant;
            else
                return (r.num(z) / r.den(z)).real() + r.constant;
        },
        rep_);
}

cplx DiscHarmonic::gradient(cplx z) const
{
    // grad Re F = conj(F')
    return std::visit(
        [&](const auto& r) -> cplx {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, PoissonData>) {
                cplx val, der;
                fourier_.eval_with_derivative(unit_coords(disc_, z), val, der);
                return std::conj(der / disc_.radius);
            } else if constexpr (std::is_same_v<T, RealPartPoly>) {
                cplx val, der;
                r.p.eval_with_derivative(z, val, der);
                return std::conj(der);
            } else {
                cplx nv, nd, dv, dd;
                r.num.eval_with_derivative(z, nv, nd);
                r.den.eval_with_derivative(z, dv, dd);
                return std::conj((nd * dv - nv * dd) / (dv * dv));
            }
        },
        rep_);
}

DiscHarmonic DiscHarmonic::to_unit_disc() const
{
    const Disc unit{};
    return std::visit(
        [&](const auto& r) -> DiscHarmonic {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, PoissonData>)
                return DiscHarmonic(r, unit);
            else if constexpr (std::is_same_v<T, RealPartPoly>)
                return DiscHarmonic(RealPartPoly{r.p.compose_affine(disc_.center, disc_.radius), r.constant}, unit);
            else
                return DiscHarmonic(RealPartRational{r.num.compose_affine(disc_.center, disc_.radius),
                                                     r.den.compose_affine(disc_.center, disc_.radius), r.constant},
                                    unit);
        },
        rep_);
}

double green_disc(cplx z, cplx zeta) noexcept
{
    if (z == zeta)
        return std::numeric_limits<double>::infinity();
    return std::log(std::abs(1.0 - z * std::conj(zeta))) - std::log(std::abs(z - zeta));
}

cplx green_disc_gradient(cplx z, cplx zeta) noexcept
{
    const cplx zb = std::conj(zeta);
    return std::conj(-zb / (1.0 - z * zb)) - std::conj(1.0 / (z - zeta));
}

double green_boundary_normal_derivative(cplx z, cplx zeta) noexcept
{
    return -(1.0 - std::norm(zeta)) / std::norm(z - zeta);
}

GreenMinimum minimize_green_normal_derivative(cplx zeta)
{
    const auto best = periodic_max(
        [&](double t) { return -std::abs(green_boundary_normal_derivative(std::polar(1.0, t), zeta)); }, 4096);
    return {-best.value, best.theta};
}

DiscSuperharmonic::DiscSuperharmonic(std::vector<Atom> atoms, DiscHarmonic harmonic)
    : atoms_(std::move(atoms)), harmonic_(std::move(harmonic))
{
    const Disc& d = harmonic_.disc();
    for (const auto& a : atoms_) {
        if (!(a.weight > 0.0))
            throw ValidationError("atom weights must be positive");
        if (!(std::abs(a.location - d.center) < d.radius))
            throw ValidationError("atoms must lie in the open disc");
    }
}

double DiscSuperharmonic::value(cplx z) const
{
    const Disc& d = disc();
    const cplx w = unit_coords(d, z);
    double v = harmonic_.value(z);
    for (const auto& a : atoms_)
        v += a.weight * green_disc(w, unit_coords(d, a.location));
    return v;
}

cplx DiscSuperharmonic::gradient(cplx z) const
{
    const Disc& d = disc();
    const cplx w = unit_coords(d, z);
    cplx g = harmonic_.gradient(z);
    for (const auto& a : atoms_)
        g += a.weight * green_disc_gradient(w, unit_coords(d, a.location)) / d.radius;
    return g;
}

double DiscSuperharmonic::mass_in_half_disc() const
{
    const Disc& d = disc();
    double m = 0.0;
    for (const auto& a : atoms_)
        if (std::abs(a.location - d.center) < 0.5 * d.radius)
            m += a.weight;
    return m;
}

DiscSuperharmonic DiscSuperharmonic::to_unit_disc() const
{
    const Disc& d = disc();
    std::vector<Atom> mapped;
    mapped.reserve(atoms_.size());
    for (const auto& a : atoms_)
        mapped.push_back({unit_coords(d, a.location), a.weight});
    return DiscSuperharmonic(std::move(mapped), harmonic_.to_unit_disc());
}

LemmaCheck verify_lemma1(const DiscHarmonic& v, cplx z1)
{
    const Disc& d = v.disc();
    if (!on_boundary(d, z1))
        throw ValidationError("z1 must lie on the boundary circle");
    const double at_z1 = v.value(z1);
    if (std::abs(at_z1) > 1e-10)
        throw ValidationError("v(z1) must vanish (got " + std::to_string(at_z1) + ")");
    LemmaCheck c;
    c.lhs = v.value(d.center);
    c.rhs = 2.0 * d.radius * std::abs(v.gradient(z1));
    c.margin = c.rhs - c.lhs;
    return c;
}

LemmaCheck verify_lemma2(const DiscSuperharmonic& v, cplx z1)
{
    const Disc& d = v.disc();
    if (!on_boundary(d, z1))
        throw ValidationError("z1 must lie on the boundary circle");
    const double at_z1 = v.value(z1);
    if (std::abs(at_z1) > 1e-10)
        throw ValidationError("v(z1) must vanish (got " + std::to_string(at_z1) + ")");
    for (const auto& a : v.atoms())
        if (std::abs(std::abs(a.location - d.center) - 0.5 * d.radius) <= 1e-12 * d.radius)
            throw ValidationError("atom on the circle |zeta - a| = R/2 makes the mass ambiguous");
    LemmaCheck c;
    c.lhs = v.mass_in_half_disc();
    c.rhs = 3.0 * d.radius * std::abs(v.gradient(z1));
    c.margin = c.rhs - c.lhs;
    return c;
}

namespace {

using Rng = std::mt19937_64;

Disc random_disc(Rng& rng)
{
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    std::uniform_real_distribution<double> logr(std::log(0.2), std::log(5.0));
    return {cplx(pos(rng), pos(rng)), std::exp(logr(rng))};
}

/// Samples of |(e^{it} - e^{it1}) p(e^{it})|^2, normalized to mean 1.
std::vector<double> vanishing_density(Rng& rng, double theta1)
{
    std::uniform_int_distribution<int> deg(0, 6);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int m = deg(rng);
    std::vector<cplx> c(static_cast<std::size_t>(m) + 1);
    for (auto& x : c)
        x = cplx(gauss(rng), gauss(rng));
    if (c.back() == cplx{})
        c.back() = 1.0;
    const ComplexPoly p(std::move(c));
    const cplx root = std::polar(1.0, theta1);

    std::vector<double> s(kPoissonGrid);
    double mean = 0.0;
    for (int k = 0; k < kPoissonGrid; ++k) {
        const cplx w = std::polar(1.0, kTwoPi * k / kPoissonGrid);
        s[static_cast<std::size_t>(k)] = std::norm((w - root) * p(w));
        mean += s[static_cast<std::size_t>(k)];
    }
    mean /= kPoissonGrid;
    for (auto& x : s)
        x /= mean;
    return s;
}

Lemma1Instance make_lemma1(Rng& rng)
{
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    const Disc d = random_disc(rng);
    const double theta1 = angle(rng);
    DiscHarmonic v(PoissonData{vanishing_density(rng, theta1)}, d);
    return {std::move(v), d.center + std::polar(d.radius, theta1)};
}

Lemma2Instance make_lemma2(Rng& rng)
{
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> atom_count(1, 6);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const Disc d = random_disc(rng);
    const double theta1 = angle(rng);
    const double scale = std::exp(gauss(rng));

    std::vector<Atom> atoms;
    const int k = atom_count(rng);
    while (static_cast<int>(atoms.size()) < k) {
        // area-uniform in the disc, kept 1e-3 R away from the half-radius circle
        const double rad = std::sqrt(unit(rng)) * d.radius * 0.999;
        if (std::abs(rad - 0.5 * d.radius) < 1e-3 * d.radius)
            continue;
        atoms.push_back({d.center + std::polar(rad, angle(rng)), scale * std::exp(gauss(rng))});
    }

    const bool with_harmonic = unit(rng) < 0.5;
    if (with_harmonic) {
        auto samples = vanishing_density(rng, theta1);
        const double amp = std::exp(gauss(rng));
        for (auto& s : samples)
            s *= amp;
        return {DiscSuperharmonic(std::move(atoms), DiscHarmonic(PoissonData{std::move(samples)}, d)),
                d.center + std::polar(d.radius, theta1)};
    }
    return {DiscSuperharmonic(std::move(atoms), DiscHarmonic(RealPartPoly{}, d)),
            d.center + std::polar(d.radius, theta1)};
}

} // namespace

std::vector<Lemma1Instance> random_lemma1_family(std::uint64_t seed, int count)
{
    Rng rng(seed);
    std::vector<Lemma1Instance> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k)
        out.push_back(make_lemma1(rng));
    return out;
}

std::vector<Lemma2Instance> random_lemma2_family(std::uint64_t seed, int count)
{
    Rng rng(seed);
    std::vector<Lemma2Instance> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k)
        out.push_back(make_lemma2(rng));
    return out;
}

std::vector<LemmaInstance> random_lemma_family(std::uint64_t seed, int count)
{
    Rng rng(seed);
    std::vector<LemmaInstance> out;
    for (int k = 0; k < count; ++k) {
        if (k % 2 == 0)
            out.emplace_back(make_lemma1(rng));
        else
            out.emplace_back(make_lemma2(rng));
    }
    return out;
}

HarnessReport run_lemma_harness(std::uint64_t seed, int count)
{
    HarnessReport rep;
    rep.lemma1_min = std::numeric_limits<double>::infinity();
    rep.lemma2_min = std::numeric_limits<double>::infinity();

    const auto l1 = random_lemma1_family(seed, count);
    for (std::size_t k = 0; k < l1.size(); ++k) {
        const double m = verify_lemma1(l1[k].v, l1[k].z1).margin;
        rep.lemma1_margins.push_back(m);
        rep.lemma1_min = std::min(rep.lemma1_min, m);
        if (m < -kLemmaSlack)
            rep.failures.push_back({1, static_cast<int>(k), m});
    }
    // Independent stream for the second family.
    const auto l2 = random_lemma2_family(seed ^ 0x9E3779B97F4A7C15ULL, count);
    for (std::size_t k = 0; k < l2.size(); ++k) {
        const double m = verify_lemma2(l2[k].v, l2[k].z1).margin;
        rep.lemma2_margins.push_back(m);
        rep.lemma2_min = std::min(rep.lemma2_min, m);
        if (m < -kLemmaSlack)
            rep.failures.push_back({2, static_cast<int>(k), m});
    }
    rep.green_minimum = minimize_green_normal_derivative(cplx(0.5, 0.0)).value;
    return rep;
}

} // namespace nevlab
