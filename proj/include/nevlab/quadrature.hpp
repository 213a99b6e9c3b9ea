#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nevlab {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0; ///< difference between the last two refinements
    long evaluations = 0;
};

/// Mean of a 2 pi periodic function over one period, by the trapezoidal rule with node doubling.
/// Starts at `min_nodes` (rounded up to a power of two) and stops once two successive levels
/// agree to `abs_tol` (or to the rounding level of the sum, whichever is larger). Throws BudgetError
/// past `max_nodes`.
QuadratureResult periodic_mean(const std::function<double(double)>& f, double abs_tol, long min_nodes,
                               long max_nodes = 1L << 22);

/// Adaptive Gauss-Legendre panels on [a, b]. A panel is accepted when its 20-point estimate agrees
/// with the sum over its halves to within max(abs_tol * width / (b - a), rel_tol * |panel|).
QuadratureResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                         double abs_tol, double rel_tol = 0.0, int max_depth = 40);

struct CircleMax {
    double theta = 0.0;
    double value = 0.0;
};

/// Maximum of a 2 pi periodic function: uniform scan with `samples` nodes, then Brent refinement
/// around the best few local maxima.
CircleMax periodic_max(const std::function<double(double)>& f, long samples, int refine = 8);

/// Point where the index attaining max_j g_j(theta) changes.
struct ArgmaxSwitch {
    double theta = 0.0;
    int left = -1;  ///< argmax just before theta
    int right = -1; ///< argmax just after theta
};

/// Evaluates all g_j(theta) into `out` (size = count).
using FamilyEval = std::function<void(double, std::span<double>)>;

/// All switches of argmax_j g_j(theta) on [0, 2 pi), located by a uniform scan of `seeds` points
/// followed by bisection on the margin between the competing indices.
std::vector<ArgmaxSwitch> argmax_switches(const FamilyEval& g, int count, int seeds, double theta_tol = 1e-13);

} // namespace nevlab
