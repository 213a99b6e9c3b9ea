#include "nevlab/locus.hpp"

#include "nevlab/error.hpp"
#include "nevlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace nevlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string describe(cplx z)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

/// Level set {Re D = 0} for one pair, plus the dominance test against the other exponents.
class PairLevel {
public:
    PairLevel(std::span<const ComplexPoly> exponents, int i, int j)
        : exps_(exponents), i_(i), j_(j), d_(exponents[i - 1] - exponents[j - 1]), dd_(d_.derivative())
    {
    }

    const ComplexPoly& difference() const noexcept { return d_; }
    double g(cplx z) const noexcept { return d_(z).real(); }
    cplx gradient(cplx z) const noexcept { return std::conj(dd_(z)); }
    double residual_scale(cplx z) const noexcept { return std::max(1.0, d_.max_modulus_bound(std::abs(z))); }

    /// Newton steps along the gradient back onto Re D = 0.
    bool correct(cplx& z) const noexcept
    {
        for (int it = 0; it < 16; ++it) {
            const double val = g(z);
            if (std::abs(val) <= 1e-12 * residual_scale(z))
                return true;
            const cplx grad = gradient(z);
            const double n2 = std::norm(grad);
            if (n2 == 0.0)
                return false;
            z -= val * grad / n2;
        }
        return std::abs(g(z)) <= 1e-12 * residual_scale(z);
    }

    /// u_i - max over m != i, j of u_m; +inf when there is no third exponent.
    double margin(cplx z) const noexcept
    {
        const double ui = exps_[i_ - 1](z).real();
        double other = kNegInf;
        for (int m = 1; m <= static_cast<int>(exps_.size()); ++m)
            if (m != i_ && m != j_)
                other = std::max(other, exps_[m - 1](z).real());
        return other == kNegInf ? std::numeric_limits<double>::infinity() : ui - other;
    }

    /// Whether the pair carries u* at z: a clear dominance margin, or, inside the tie band, the
    /// two sides of the curve being owned by i and j respectively.
    bool active(cplx z) const noexcept
    {
        const double m = margin(z);
        const double eta = tie_tolerance(exps_[i_ - 1](z).real());
        if (m > eta)
            return true;
        if (m < -eta)
            return false;
        const cplx grad = gradient(z);
        if (std::abs(grad) == 0.0)
            return false;
        const cplx normal = grad / std::abs(grad);
        const double delta = 1e-7 * (1.0 + std::abs(z));
        const int plus = argmax(z + delta * normal);
        const int minus = argmax(z - delta * normal);
        return (plus == i_ && minus == j_) || (plus == j_ && minus == i_);
    }

    double density(cplx z) const noexcept { return std::abs(dd_(z)) / kTwoPi; }

private:
    int argmax(cplx z) const noexcept
    {
        int best = 1;
        double bv = exps_[0](z).real();
        for (int m = 2; m <= static_cast<int>(exps_.size()); ++m) {
            const double v = exps_[m - 1](z).real();
            if (v > bv) {
                bv = v;
                best = m;
            }
        }
        return best;
    }

    std::span<const ComplexPoly> exps_;
    int i_;
    int j_;
    ComplexPoly d_;
    ComplexPoly dd_;
};

/// Roots in theta of Re D(r e^{i theta}) by scan and bisection.
std::vector<double> circle_crossings(const PairLevel& level, double r, int degree)
{
    const int seeds = 16 * (4 * degree + 16);
    auto g = [&](double t) { return level.g(std::polar(r, t)); };
    const double h = kTwoPi / seeds;
    std::vector<double> out;
    double t0 = 0.0;
    double g0 = g(t0);
    for (int k = 1; k <= seeds; ++k) {
        const double t1 = h * k;
        const double g1 = g(t1);
        if (g0 == 0.0) {
            out.push_back(t0);
        } else if (g0 * g1 < 0.0) {
            double lo = t0, hi = t1, glo = g0;
            for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((gm < 0.0) == (glo < 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        t0 = t1;
        g0 = g1;
    }
    return out;
}

/// Lands on |z| = radius along the level curve, starting near `z`.
bool land_on_circle(const PairLevel& level, double radius, cplx& z)
{
    double t = std::arg(z);
    for (int it = 0; it < 50; ++it) {
        const cplx w = std::polar(radius, t);
        const double val = level.g(w);
        if (std::abs(val) <= 1e-12 * level.residual_scale(w)) {
            z = w;
            return true;
        }
        // d/dt Re D(r e^{it}) = Re(D'(w) i w) = Re(conj(grad) i w)
        const double slope = (std::conj(level.gradient(w)) * cplx(0.0, 1.0) * w).real();
        if (slope == 0.0)
            return false;
        t -= val / slope;
    }
    return false;
}

LocusBranch trace_one(const PairLevel& level, int i, int j, cplx start, double r_max)
{
    LocusBranch br;
    br.pair = {i, j};
    br.difference = level.difference();
    const int d = br.difference.degree();
    br.b = d - 1;
    br.c = d * std::abs(br.difference.leading()) / kTwoPi;

    auto push = [&](cplx z, double arclen) {
        TracePoint p;
        p.z = z;
        p.arclen = arclen;
        p.density = level.density(z);
        p.margin = level.margin(z);
        p.active = level.active(z);
        br.trace.push_back(p);
    };

    cplx z = start;
    push(z, 0.0);
    const double r_start = std::abs(z);
    cplx tangent = cplx(0.0, 1.0) * level.gradient(z);
    tangent /= std::abs(tangent);
    if ((tangent * std::conj(z)).real() < 0.0)
        tangent = -tangent;

    double h = std::abs(z) / 100.0;
    for (int step = 0; step < 1000000; ++step) {
        cplx zc = z + h * tangent;
        bool ok = level.correct(zc) && std::abs(zc - (z + h * tangent)) <= 0.5 * h;
        cplx next_tangent;
        if (ok) {
            next_tangent = cplx(0.0, 1.0) * level.gradient(zc);
            const double nt = std::abs(next_tangent);
            ok = nt > 0.0;
            if (ok) {
                next_tangent /= nt;
                if ((next_tangent * std::conj(tangent)).real() < 0.0)
                    next_tangent = -next_tangent;
                ok = (next_tangent * std::conj(tangent)).real() > 0.5;
            }
        }
        if (!ok) {
            h *= 0.5;
            if (h < 1e-12 * std::abs(z))
                throw LocusError("continuation failed on branch (" + std::to_string(i) + "," + std::to_string(j) +
                                 "): corrector diverged after last good point " + describe(z));
            continue;
        }
        if (std::abs(zc) < 0.999 * r_start)
            throw LocusError("branch (" + std::to_string(i) + "," + std::to_string(j) +
                             ") turned back inside the regularity radius near " + describe(zc));
        if (std::abs(zc) >= r_max) {
            if (!land_on_circle(level, r_max, zc))
                throw LocusError("branch (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") could not be landed on |z| = r_max after " + describe(z));
            push(zc, std::abs(zc - z));
            break;
        }
        push(zc, std::abs(zc - z));
        z = zc;
        tangent = next_tangent;
        h = std::min(1.5 * h, std::abs(z) / 100.0);
    }

    // Split segments whose endpoints disagree on activity at the transition point.
    std::vector<TracePoint> refined;
    refined.reserve(br.trace.size());
    refined.push_back(br.trace.front());
    for (std::size_t k = 1; k < br.trace.size(); ++k) {
        const TracePoint& a = br.trace[k - 1];
        const TracePoint& b = br.trace[k];
        if (a.active != b.active) {
            double lo = 0.0, hi = 1.0;
            cplx zt = a.z;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                cplx zm = a.z + mid * (b.z - a.z);
                level.correct(zm);
                if (level.active(zm) == a.active)
                    lo = mid;
                else
                    hi = mid;
                zt = zm;
            }
            zt = a.z + 0.5 * (lo + hi) * (b.z - a.z);
            level.correct(zt);
            TracePoint t;
            t.z = zt;
            t.arclen = std::abs(zt - a.z);
            t.density = level.density(zt);
            t.margin = level.margin(zt);
            t.active = true; // boundary of the active arc
            refined.push_back(t);
            TracePoint bb = b;
            bb.arclen = std::abs(b.z - zt);
            refined.push_back(bb);
        } else {
            refined.push_back(b);
        }
    }
    br.trace = std::move(refined);
    br.active = br.trace.back().active;
    return br;
}

} // namespace

double LocusBranch::outer_radius() const { return trace.empty() ? 0.0 : std::abs(trace.back().z); }

double LocusBranch::active_mass(double r_lo, double r_hi) const
{
    double mass = 0.0;
    for (std::size_t k = 1; k < trace.size(); ++k) {
        const TracePoint& a = trace[k - 1];
        const TracePoint& b = trace[k];
        if (!a.active || !b.active)
            continue;
        const double ra = std::abs(a.z);
        const double rb = std::abs(b.z);
        if (rb <= ra)
            continue;
        const double s0 = std::clamp((r_lo - ra) / (rb - ra), 0.0, 1.0);
        const double s1 = std::clamp((r_hi - ra) / (rb - ra), 0.0, 1.0);
        if (s1 <= s0)
            continue;
        // linear density along the chord
        const double slope = b.density - a.density;
        const double integral = a.density * (s1 - s0) + 0.5 * slope * (s1 * s1 - s0 * s0);
        mass += b.arclen * integral;
    }
    return mass;
}

double regularity_radius(std::span<const ComplexPoly> exponents)
{
    double worst = -1.0;
    const int n = static_cast<int>(exponents.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const ComplexPoly d = exponents[i] - exponents[j];
            if (d.degree() < 1)
                continue;
            worst = std::max(worst, (d * d.derivative()).cauchy_ratio());
        }
    if (worst < 0.0)
        throw LocusError("locus empty: no pair of exponents has a nonconstant difference");
    return 2.0 * (1.0 + worst);
}

LocusSummary trace_branches(std::span<const ComplexPoly> exponents, double r0, double r_max)
{
    if (!(r0 > 0.0) || !(r_max > r0))
        throw ValidationError("trace_branches needs 0 < r0 < r_max");
    LocusSummary out;
    out.r0 = r0;
    out.r_max = r_max;
    out.b = kNegInf;
    out.c0 = 0.0;

    const int n = static_cast<int>(exponents.size());
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            PairLevel level(exponents, i, j);
            const int d = level.difference().degree();
            if (d < 1)
                continue;
            for (double t : circle_crossings(level, r0, d)) {
                cplx start = std::polar(r0, t);
                if (!level.correct(start))
                    throw LocusError("could not seed branch (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") at " + describe(start));
                out.branches.push_back(trace_one(level, i, j, start, r_max));
            }
        }

    for (const auto& br : out.branches)
        if (br.active)
            out.b = std::max(out.b, br.b);
    for (const auto& br : out.branches)
        if (br.active && br.b == out.b)
            out.c0 = std::max(out.c0, br.c);
    return out;
}

BranchAsymptotics branch_asymptotics(const LocusBranch& branch, double r0)
{
    BranchAsymptotics a;
    a.b = branch.b;
    a.c = branch.c;
    if (branch.outer_radius() < 4.0 * r0 * (1.0 - 1e-12))
        throw LocusError("asymptotics not reached; increase r_max (need at least 4 r0)");

    const std::size_t half = branch.trace.size() / 2;
    std::vector<double> xs, ys;
    for (std::size_t k = half; k < branch.trace.size(); ++k) {
        const auto& p = branch.trace[k];
        if (p.density <= 0.0)
            continue;
        xs.push_back(std::log(std::abs(p.z)));
        ys.push_back(std::log(p.density));
    }
    if (xs.size() < 3)
        throw LocusError("asymptotics not reached; increase r_max (trace too short)");

    const double nx = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= nx;
    my /= nx;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    a.b_fit = sxx > 0.0 ? sxy / sxx : 0.0;
    double log_c = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k)
        log_c += ys[k] - a.b * xs[k];
    a.c_fit = std::exp(log_c / nx);

    if (std::abs(a.b_fit - a.b) > 0.05 || std::abs(a.c_fit - a.c) > 0.05 * a.c)
        throw LocusError("asymptotics not reached; increase r_max");
    return a;
}

double riesz_of_max(const LocusSummary& locus, double t)
{
    if (!(t > locus.r0))
        throw ValidationError("riesz_of_max needs t > r0");
    if (t > locus.r_max * (1.0 + 1e-12))
        throw ValidationError("riesz_of_max: t lies beyond the traced radius");
    double mass = 0.0;
    for (const auto& br : locus.branches)
        mass += br.active_mass(locus.r0, t);
    return mass;
}

double riesz_of_max(std::span<const ComplexPoly> exponents, double t, double r0)
{
    if (!(t > r0))
        throw ValidationError("riesz_of_max needs t > r0");
    int pairs_with_locus = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        for (std::size_t j = i + 1; j < exponents.size(); ++j)
            if ((exponents[i] - exponents[j]).degree() >= 1)
                ++pairs_with_locus;
    if (pairs_with_locus == 0)
        return 0.0; // u* is harmonic
    return riesz_of_max(trace_branches(exponents, r0, t), t);
}

BranchCount count_branch_bound(std::span<const ComplexPoly> exponents, double sigma)
{
    BranchCount bc;
    const long n = static_cast<long>(exponents.size());
    for (std::size_t i = 0; i < exponents.size(); ++i)
        for (std::size_t j = i + 1; j < exponents.size(); ++j)
            bc.count += 2L * std::max(0, (exponents[i] - exponents[j]).degree());
    bc.bound = static_cast<long>(std::ceil(2.0 * n * (n - 1) * (sigma + 1.0) - 1e-9));
    bc.ok = bc.count <= bc.bound;
    return bc;
}

std::vector<TiePoint> harvest_tie_points(const HolomorphicCurve& f, std::span<const double> radii)
{
    std::vector<TiePoint> out;
    const auto comps = f.components();
    const int count = static_cast<int>(comps.size());
    int degree = 0;
    for (const auto& c : comps)
        degree = std::max({degree, c.exponent_poly().degree(), c.amplitude_poly().degree()});
    for (double r : radii) {
        auto family = [&](double t, std::span<double> vals) {
            const cplx z = std::polar(r, t);
            for (int j = 0; j < count; ++j)
                vals[static_cast<std::size_t>(j)] = eval_component(comps[static_cast<std::size_t>(j)], z).log_modulus;
        };
        for (const auto& s : argmax_switches(family, count, 16 * (4 * degree + 16)))
            out.push_back({std::polar(r, s.theta), std::min(s.left, s.right), std::max(s.left, s.right)});
    }
    return out;
}

} // namespace nevlab
