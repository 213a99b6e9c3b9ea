#pragma once

#include "nevlab/curve.hpp"

#include <span>
#include <utility>
#include <vector>

namespace nevlab {

/// Sample along a traced branch of {Re(P_i - P_j) = 0}.
struct TracePoint {
    cplx z;
    double arclen = 0.0;  ///< chord length from the previous sample (0 for the first)
    double density = 0.0; ///< J / 2 pi = |(P_i - P_j)'(z)| / 2 pi
    double margin = 0.0;  ///< u_i - max over the other indices of u_m
    bool active = false;  ///< the pair (i, j) carries u* here
};

struct LocusBranch {
    std::pair<int, int> pair; ///< 1-based indices into P_1..P_n, i < j
    ComplexPoly difference;   ///< P_i - P_j
    std::vector<TracePoint> trace;
    double b = 0.0; ///< deg(P_i - P_j) - 1
    double c = 0.0; ///< deg(P_i - P_j) |leading coeff| / 2 pi
    bool active = false; ///< active at the outer end of the trace

    /// Integral of the density over the active part of the trace with r_lo < |z| <= r_hi.
    double active_mass(double r_lo, double r_hi) const;
    double outer_radius() const;
};

struct LocusSummary {
    double r0 = 0.0;
    double r_max = 0.0;
    std::vector<LocusBranch> branches;
    double b;  ///< max b_k over active branches, -inf when there are none
    double c0; ///< max c_k among active branches with b_k = b, 0 when there are none
};

/// 2 (1 + max over pairs of the Cauchy ratio of D D'), D = P_i - P_j nonconstant.
/// Throws LocusError("locus empty") when no pair has a nonconstant difference.
double regularity_radius(std::span<const ComplexPoly> exponents);

/// Traces every branch from |z| = r0 to |z| = r_max by tangent prediction and Newton correction.
LocusSummary trace_branches(std::span<const ComplexPoly> exponents, double r0, double r_max);

struct BranchAsymptotics {
    double b = 0.0;     ///< symbolic exponent
    double c = 0.0;     ///< symbolic coefficient
    double b_fit = 0.0; ///< least-squares slope of log density against log|z|
    double c_fit = 0.0; ///< coefficient fitted with the slope held at b
};

/// Symbolic (b_k, c_k) checked against a fit over the outer half of the trace. Throws LocusError
/// when the trace is shorter than 4 r0 or the fit misses by more than 0.05 in b or 5% in c.
BranchAsymptotics branch_asymptotics(const LocusBranch& branch, double r0);

/// nu(t) - nu(r0) for u* = max Re P_j, from the jump densities of the traced branches.
double riesz_of_max(std::span<const ComplexPoly> exponents, double t, double r0);
double riesz_of_max(const LocusSummary& locus, double t);

struct BranchCount {
    long count = 0;
    long bound = 0;
    bool ok = true;
};

/// Asymptotic ray count sum 2 deg(P_i - P_j) against ceil(2 n (n - 1)(sigma + 1)).
BranchCount count_branch_bound(std::span<const ComplexPoly> exponents, double sigma);

/// A point where two of u_0..u_n attain the maximum together.
struct TiePoint {
    cplx z;
    int m = 0;
    int k = 0;
};

/// Tie points of max_{0<=j<=n} u_j on each circle |z| = r, found with the same scan and bisection
/// used for the kinks of u*.
std::vector<TiePoint> harvest_tie_points(const HolomorphicCurve& f, std::span<const double> radii);

} // namespace nevlab
