#include "nevlab/curve.hpp"

#include "nevlab/error.hpp"
#include "nevlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nevlab {

namespace {

const ComplexPoly& one_poly()
{
    static const ComplexPoly p({cplx(1.0)});
    return p;
}

const ComplexPoly& zero_poly()
{
    static const ComplexPoly p;
    return p;
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// exp() overflows past this
constexpr double kMaxLog = 709.0;

double log_abs(cplx w) noexcept
{
    const double a = std::abs(w);
    return a > 0.0 ? std::log(a) : kNegInf;
}

/// log(sum exp(x_k)), tolerating -inf entries.
double log_sum_exp(std::span<const double> xs) noexcept
{
    double m = kNegInf;
    for (double x : xs)
        m = std::max(m, x);
    if (m == kNegInf)
        return kNegInf;
    double s = 0.0;
    for (double x : xs)
        s += std::exp(x - m);
    return m + std::log(s);
}

} // namespace

const ComplexPoly& CurveComponent::q_() const noexcept
{
    if (const auto* p = std::get_if<Poly>(&form_))
        return p->q;
    if (const auto* p = std::get_if<PolyExp>(&form_))
        return p->q;
    return one_poly();
}

const ComplexPoly& CurveComponent::p_() const noexcept
{
    if (const auto* p = std::get_if<ExpPoly>(&form_))
        return p->p;
    if (const auto* p = std::get_if<PolyExp>(&form_))
        return p->p;
    return zero_poly();
}

bool CurveComponent::is_nonvanishing() const noexcept
{
    const ComplexPoly& q = q_();
    return q.degree() == 0;
}

bool CurveComponent::is_identically_zero() const noexcept { return q_().is_zero(); }

ComponentJet CurveComponent::jet(cplx z) const noexcept
{
    ComponentJet j{};
    cplx q, dq, p, dp;
    q_().eval_with_derivative(z, q, dq);
    p_().eval_with_derivative(z, p, dp);
    j.amplitude = q;
    j.amplitude_derivative = dq + q * dp;
    j.exponent = p;
    return j;
}

cplx CurveComponent::log_derivative(cplx z) const noexcept
{
    cplx q, dq, p, dp;
    q_().eval_with_derivative(z, q, dq);
    p_().eval_with_derivative(z, p, dp);
    if (q == cplx{})
        return {std::numeric_limits<double>::infinity(), 0.0};
    return dq / q + dp;
}

CurveComponent CurveComponent::times_exp(const ComplexPoly& shift) const
{
    if (const auto* e = std::get_if<ExpPoly>(&form_))
        return ExpPoly{e->p + shift};
    return PolyExp{q_(), p_() + shift};
}

std::string CurveComponent::kind() const
{
    switch (form_.index()) {
    case 0:
        return "poly";
    case 1:
        return "exppoly";
    default:
        return "polyexp";
    }
}

ComponentValue eval_component(const CurveComponent& c, cplx z) noexcept
{
    const ComponentJet j = c.jet(z);
    ComponentValue out;
    const double amp = std::abs(j.amplitude);
    if (amp == 0.0) {
        out.log_modulus = kNegInf;
        out.value = cplx{};
        return out;
    }
    out.log_modulus = std::log(amp) + j.exponent.real();
    out.phase = (j.amplitude / amp) * std::polar(1.0, j.exponent.imag());
    if (out.log_modulus < kMaxLog)
        out.value = std::exp(out.log_modulus) * out.phase;
    return out;
}

HolomorphicCurve::HolomorphicCurve(std::vector<CurveComponent> components, double sigma, std::optional<double> K)
    : components_(std::move(components)), sigma_(sigma), K_(K)
{
    if (components_.size() < 2)
        throw ValidationError("a curve needs at least two components (n >= 1)");
    if (!std::isfinite(sigma_) || sigma_ < 0.0)
        throw ValidationError("sigma must be a finite nonnegative number");
    if (K_ && (!std::isfinite(*K_) || *K_ <= 0.0))
        throw ValidationError("K must be a finite positive number");
    if (components_.front().is_identically_zero())
        throw ValidationError("component 0 is identically zero");

    const int n = dimension();
    const int max_deg = max_exponent_degree();
    for (int j = 1; j <= n; ++j) {
        const CurveComponent& c = components_[static_cast<std::size_t>(j)];
        if (!c.is_exp_poly())
            throw ValidationError("component " + std::to_string(j) + " must be nonvanishing (type exppoly)");
        if (c.exponent_poly().degree() > max_deg)
            throw ValidationError("component " + std::to_string(j) + " has exponent degree " +
                                  std::to_string(c.exponent_poly().degree()) + " > floor(2 sigma + 2) = " +
                                  std::to_string(max_deg));
    }
    if (!components_.back().exponent_poly().is_zero())
        throw ValidationError("component " + std::to_string(n) + " must be the constant 1 (exppoly with P = 0)");
}

HolomorphicCurve HolomorphicCurve::with_K(double K) const
{
    return HolomorphicCurve(components_, sigma_, K);
}

std::vector<ComplexPoly> HolomorphicCurve::reduced_exponents() const
{
    std::vector<ComplexPoly> out;
    for (std::size_t j = 1; j < components_.size(); ++j)
        out.push_back(components_[j].exponent_poly());
    return out;
}

int HolomorphicCurve::max_exponent_degree() const noexcept
{
    return static_cast<int>(std::floor(2.0 * sigma_ + 2.0 + 1e-12));
}

double log_norm(std::span<const CurveComponent> f, cplx z) noexcept
{
    std::vector<double> twice(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const ComponentJet j = f[k].jet(z);
        twice[k] = 2.0 * (log_abs(j.amplitude) + j.exponent.real());
    }
    return 0.5 * log_sum_exp(twice);
}

double log_norm(const HolomorphicCurve& f, cplx z) noexcept { return log_norm(f.components(), z); }

double spherical_derivative(std::span<const CurveComponent> f, cplx z) noexcept
{
    // ||f'||^2 = sum_{i<j} |W_ij|^2 e^{2 Re(P_i + P_j)} / (sum |A_k|^2 e^{2 Re P_k})^2,
    // W_ij = B_i A_j - A_i B_j with f_k = A_k e^{P_k}, f_k' = B_k e^{P_k}.
    const std::size_t m = f.size();
    std::vector<ComponentJet> jets(m);
    std::vector<double> twice_log(m);
    for (std::size_t k = 0; k < m; ++k) {
        jets[k] = f[k].jet(z);
        twice_log[k] = 2.0 * (log_abs(jets[k].amplitude) + jets[k].exponent.real());
    }
    const double log_norm_sq = log_sum_exp(twice_log);

    std::vector<double> pair_logs;
    pair_logs.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const cplx w = jets[i].amplitude_derivative * jets[j].amplitude -
                           jets[i].amplitude * jets[j].amplitude_derivative;
            pair_logs.push_back(2.0 * (log_abs(w) + jets[i].exponent.real() + jets[j].exponent.real()));
        }
    const double log_num_sq = log_sum_exp(pair_logs);
    if (log_num_sq == kNegInf)
        return 0.0;
    return std::exp(0.5 * log_num_sq - log_norm_sq);
}

double spherical_derivative(const HolomorphicCurve& f, cplx z) noexcept
{
    return spherical_derivative(f.components(), z);
}

double tie_tolerance(double u) noexcept { return 1e-9 * std::max(1.0, std::abs(u)); }

LogModuli component_log_moduli(const HolomorphicCurve& f, cplx z)
{
    LogModuli out;
    out.u.reserve(f.components().size());
    for (const auto& c : f.components())
        out.u.push_back(eval_component(c, z).log_modulus);
    out.u_star = *std::max_element(out.u.begin() + 1, out.u.end());
    const double eta = tie_tolerance(out.u_star);
    for (int j = 1; j < static_cast<int>(out.u.size()); ++j)
        if (out.u[static_cast<std::size_t>(j)] >= out.u_star - eta)
            out.argmax.push_back(j);
    return out;
}

double spherical_derivative_circle_sup(std::span<const CurveComponent> f, double r)
{
    // Features of ||f'|| on the circle have angular width about 1 / (r |P'|).
    double scale = 8.0;
    for (const auto& c : f) {
        scale += c.exponent_poly().angular_derivative_bound(r);
        scale += 4.0 * std::max(0, c.amplitude_poly().degree());
    }
    const long samples = std::clamp(static_cast<long>(32.0 * scale), 512L, 1L << 20);
    const auto best = periodic_max([&](double t) { return spherical_derivative(f, std::polar(r, t)); }, samples);
    return best.value;
}

GrowthEstimate estimate_growth(const HolomorphicCurve& f, double r_min, double r_max, int circles)
{
    if (!(r_min > 0.0) || !(r_min < r_max))
        throw ValidationError("estimate_growth needs 0 < r_min < r_max");
    if (circles < 4)
        throw ValidationError("estimate_growth needs at least 4 circles");

    GrowthEstimate est;
    const double step = std::log(r_max / r_min) / (circles - 1);
    for (int k = 0; k < circles; ++k) {
        const double r = r_min * std::exp(step * k);
        est.radii.push_back(r);
        est.circle_sup.push_back(spherical_derivative_circle_sup(f.components(), r));
    }

    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < est.radii.size(); ++k)
        if (est.circle_sup[k] > 1e-300) {
            xs.push_back(std::log(est.radii[k]));
            ys.push_back(std::log(est.circle_sup[k]));
        }
    if (xs.size() < 2)
        return est; // degenerate: ||f'|| vanishes on every sampled circle

    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    est.sigma_hat = sxx > 0.0 ? sxy / sxx : 0.0;

    for (std::size_t k = 0; k < est.radii.size(); ++k)
        est.K_hat = std::max(est.K_hat, est.circle_sup[k] * std::pow(est.radii[k], -f.sigma()));
    return est;
}

} // namespace nevlab
