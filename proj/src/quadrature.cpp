#include "nevlab/quadrature.hpp"

#include "nevlab/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nevlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRoundoff = 1e-14;

long next_pow2(long n)
{
    long p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

struct Panel {
    double a;
    double b;
    double whole;
    int depth;
};

int argmax_of(std::span<const double> v)
{
    int best = 0;
    for (int j = 1; j < static_cast<int>(v.size()); ++j)
        if (v[static_cast<std::size_t>(j)] > v[static_cast<std::size_t>(best)])
            best = j;
    return best;
}

} // namespace

QuadratureResult periodic_mean(const std::function<double(double)>& f, double abs_tol, long min_nodes,
                               long max_nodes)
{
    long n = next_pow2(std::max(8L, min_nodes));
    QuadratureResult res;
    double sum = 0.0, sum_abs = 0.0;
    for (long k = 0; k < n; ++k) {
        const double v = f(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
        sum += v;
        sum_abs += std::abs(v);
    }
    res.evaluations = n;
    double mean = sum / static_cast<double>(n);

    while (true) {
        if (2 * n > max_nodes)
            throw BudgetError("periodic trapezoidal rule exceeded its node budget", mean, res.error);
        // Only the odd nodes of the doubled grid are new.
        double fresh = 0.0;
        for (long k = 0; k < n; ++k) {
            const double v = f(kTwoPi * (static_cast<double>(k) + 0.5) / static_cast<double>(n));
            fresh += v;
            sum_abs += std::abs(v);
        }
        res.evaluations += n;
        const double refined = 0.5 * (mean + fresh / static_cast<double>(n));
        res.error = std::abs(refined - mean);
        mean = refined;
        n *= 2;
        // agreement below the rounding level of the sum is as good as it gets
        const double floor = kRoundoff * sum_abs / static_cast<double>(n);
        if (res.error <= std::max(abs_tol, floor))
            break;
    }
    res.value = mean;
    return res;
}

QuadratureResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                         double abs_tol, double rel_tol, int max_depth)
{
    using GL = boost::math::quadrature::gauss<double, 20>;
    QuadratureResult res;
    if (b <= a)
        return res;

    const double width = b - a;
    std::vector<Panel> stack;
    stack.push_back({a, b, GL::integrate(f, a, b), 0});
    res.evaluations = 20;

    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.a + p.b);
        const double left = GL::integrate(f, p.a, mid);
        const double right = GL::integrate(f, mid, p.b);
        res.evaluations += 40;
        const double halves = left + right;
        const double diff = std::abs(halves - p.whole);
        const double allowed = std::max(abs_tol * (p.b - p.a) / width, rel_tol * std::abs(halves));
        if (diff <= allowed) {
            res.value += halves;
            res.error += diff;
            continue;
        }
        if (p.depth >= max_depth)
            throw BudgetError("adaptive Gauss-Legendre exceeded its subdivision budget", res.value + halves,
                              res.error + diff);
        stack.push_back({mid, p.b, right, p.depth + 1});
        stack.push_back({p.a, mid, left, p.depth + 1});
    }
    return res;
}

CircleMax periodic_max(const std::function<double(double)>& f, long samples, int refine)
{
    samples = std::max(16L, samples);
    const double h = kTwoPi / static_cast<double>(samples);
    std::vector<double> vals(static_cast<std::size_t>(samples));
    for (long k = 0; k < samples; ++k)
        vals[static_cast<std::size_t>(k)] = f(h * static_cast<double>(k));

    std::vector<long> peaks;
    for (long k = 0; k < samples; ++k) {
        const double prev = vals[static_cast<std::size_t>((k + samples - 1) % samples)];
        const double next = vals[static_cast<std::size_t>((k + 1) % samples)];
        const double cur = vals[static_cast<std::size_t>(k)];
        if (cur >= prev && cur >= next)
            peaks.push_back(k);
    }
    if (peaks.empty())
        peaks.push_back(0);
    std::sort(peaks.begin(), peaks.end(), [&](long x, long y) {
        return vals[static_cast<std::size_t>(x)] > vals[static_cast<std::size_t>(y)];
    });
    if (static_cast<int>(peaks.size()) > refine)
        peaks.resize(static_cast<std::size_t>(refine));

    CircleMax best{h * static_cast<double>(peaks.front()), vals[static_cast<std::size_t>(peaks.front())]};
    for (long k : peaks) {
        const double centre = h * static_cast<double>(k);
        auto neg = [&](double t) { return -f(t); };
        const auto [t, v] = boost::math::tools::brent_find_minima(neg, centre - h, centre + h,
                                                                   std::numeric_limits<double>::digits / 2);
        if (-v > best.value)
            best = {std::fmod(t + kTwoPi, kTwoPi), -v};
    }
    return best;
}

std::vector<ArgmaxSwitch> argmax_switches(const FamilyEval& g, int count, int seeds, double theta_tol)
{
    std::vector<ArgmaxSwitch> out;
    if (count < 2)
        return out;
    seeds = std::max(seeds, 8);
    std::vector<double> buf(static_cast<std::size_t>(count));
    auto argmax_at = [&](double t) {
        g(t, buf);
        return argmax_of(buf);
    };

    const double h = kTwoPi / static_cast<double>(seeds);
    std::vector<int> idx(static_cast<std::size_t>(seeds) + 1);
    for (int k = 0; k < seeds; ++k)
        idx[static_cast<std::size_t>(k)] = argmax_at(h * k);
    idx.back() = idx.front();

    for (int k = 0; k < seeds; ++k) {
        const int end_index = idx[static_cast<std::size_t>(k) + 1];
        int cur = idx[static_cast<std::size_t>(k)];
        double left = h * k;
        const double right = h * (k + 1);
        for (int guard = 0; cur != end_index && guard < 4 * count; ++guard) {
            double lo = left;
            double hi = right;
            while (hi - lo > theta_tol) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                if (argmax_at(mid) == cur)
                    lo = mid;
                else
                    hi = mid;
            }
            const int next = argmax_at(hi);
            out.push_back({std::fmod(0.5 * (lo + hi), kTwoPi), cur, next});
            cur = next;
            left = hi;
        }
    }
    return out;
}

} // namespace nevlab
