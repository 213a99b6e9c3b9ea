#pragma once

#include "nevlab/characteristic.hpp"
#include "nevlab/curve.hpp"
#include "nevlab/locus.hpp"

#include <span>
#include <vector>

namespace nevlab {

inline constexpr double kDefaultEpsilon = 0.01;
/// Tail inequalities are checked on the largest quarter of the grid with this much slack.
inline constexpr double kTailSlack = 0.10;
inline constexpr double kTailFraction = 0.25;

/// Replaces f_0 by f_0 + c f_1. Identity when f_0 already may vanish (Poly or PolyExp).
/// For f_0 = exp(P_0) the sum is only representable when P_0 - P_1 is constant, and then it is
/// again zero-free or identically zero; both outcomes, and the unrepresentable case, throw
/// ValidationError asking for an f_0 with zeros.
HolomorphicCurve preprocess_zeros(const HolomorphicCurve& f, cplx c);

struct Prop1Result {
    double worst_margin = 0.0; ///< min of (n+1)||f'|| - |grad u_m - grad u_k|
    double worst_scaled = 0.0; ///< same margin divided by max(1, |grad u_m - grad u_k|)
    std::size_t points = 0;
    bool ok = true;
};

/// Throws ValidationError when a point is not a tie of the two largest u_j.
Prop1Result prop1_check(const HolomorphicCurve& f, std::span<const TiePoint> points);

struct Prop2Row {
    double r = 0.0;
    double excess = 0.0; ///< sup over |z| = r of u - u*
    double bound = 0.0;  ///< K (2 + eps)^(sigma+1) (n + 1) r^(sigma+1)
};

struct Prop2Result {
    std::vector<Prop2Row> rows;
    double threshold = 0.0; ///< smallest grid radius from which excess <= bound holds to the end
    bool ok = true;
};

Prop2Result prop2_margin(const HolomorphicCurve& f, double K, double epsilon, std::span<const double> radii);

struct Prop3Result {
    double b = 0.0;
    double b_ceiling = 0.0;
    double c0 = 0.0;
    double c0_ceiling = 0.0; ///< 3 4^sigma K (n + 1)
    bool b_ok = true;
    bool c0_ok = true;
};

Prop3Result prop3_check(const LocusSummary& locus, int n, double sigma, double K);
Prop3Result prop3_check(const LocusSummary& locus, const HolomorphicCurve& f, double K);

/// 6 4^sigma K n (n+1)^2 / (sigma + 1) r^(sigma+1)
double prop4_bound(int n, double sigma, double K, double r);

/// C(n, sigma) = 6 4^sigma n (n+1)^2 / (sigma + 1) + (2 + eps)^(sigma+1) (n + 1)
double theorem_constant(int n, double sigma, double epsilon = kDefaultEpsilon);

struct BoundRow {
    double r = 0.0;
    double T = 0.0;       ///< Jensen route
    double T_bound = 0.0; ///< K C(n, sigma) r^(sigma+1)
    double T_star = 0.0;
    double T_star_bound = 0.0;
    bool tail = false;
};

struct BoundReport {
    int n = 0;
    double sigma = 0.0;
    double K = 0.0;
    bool K_estimated = false;
    double epsilon = kDefaultEpsilon;
    double theorem_constant = 0.0;
    double prop4_constant = 0.0; ///< 6 4^sigma K n (n+1)^2 / (sigma + 1)

    std::vector<BoundRow> rows;
    Prop1Result prop1;
    Prop2Result prop2;
    bool has_locus = false;
    double r0 = 0.0;
    Prop3Result prop3;
    BranchCount branch_count;

    bool prop1_ok = true;
    bool prop2_ok = true;
    bool prop3_ok = true;
    bool prop4_ok = true;
    bool theorem_ok = true;
    std::vector<std::string> notes;

    bool all_ok() const noexcept { return prop1_ok && prop2_ok && prop3_ok && prop4_ok && theorem_ok; }
};

/// Full pipeline on an ascending radius grid. Sub-check failures land in the verdicts and notes;
/// the call itself only throws on invalid input.
BoundReport verify_theorem(const HolomorphicCurve& f, std::span<const double> radii,
                           double epsilon = kDefaultEpsilon, double tol = kDefaultTol);

} // namespace nevlab
