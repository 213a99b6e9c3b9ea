#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include <nevlab/characteristic.hpp>
#include <nevlab/curve.hpp>
#include <nevlab/error.hpp>
#include <nevlab/locus.hpp>

using namespace nevlab;
using oracle::pi;

namespace {

const ComplexPoly kZ{0.0, 1.0};
const std::vector<ComplexPoly> kHalfPlane{kZ, ComplexPoly{}};
const std::vector<ComplexPoly> kQuadrants{ComplexPoly::monomial(1.0, 2), ComplexPoly::monomial(-1.0, 2)};
const std::vector<ComplexPoly> kStrip{kZ, ComplexPoly{0.0, -1.0}, ComplexPoly{}};

/// nu(t) = t dT*/dt by central differences in log t of the arc-exact circle mean.
double jensen_nu(std::span<const ComplexPoly> ps, double t, double h = 1e-4)
{
    return (reduced_characteristic(ps, t * std::exp(h)) - reduced_characteristic(ps, t * std::exp(-h))) / (2 * h);
}

/// Random exponents P_1..P_{n-1} of degree <= max_deg with leading coefficients bounded away from 0, and P_n = 0.
std::vector<ComplexPoly> random_exponents(std::mt19937_64& rng, int n, int max_deg)
{
    std::vector<ComplexPoly> ps;
    for (int j = 0; j + 1 < n; ++j) {
        const int deg = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_deg));
        auto a = oracle::random_coeffs(rng, deg, 0.3);
        a.back() = std::polar(0.7 + 0.3 * std::uniform_real_distribution<double>(0, 1)(rng),
                              std::uniform_real_distribution<double>(0, 2 * pi)(rng));
        ps.emplace_back(a);
    }
    ps.emplace_back();
    return ps;
}

void check_trace_invariants(std::span<const ComplexPoly> ps, const LocusSummary& locus)
{
    for (const auto& br : locus.branches) {
        const auto [i, j] = br.pair;
        const ComplexPoly d = ps[i - 1] - ps[j - 1];
        for (const auto& p : br.trace) {
            const double scale = 1.0 + std::pow(std::abs(p.z), d.degree());
            CHECK(std::abs(d(p.z).real()) <= 1e-10 * scale);
            CHECK(p.density == doctest::Approx(std::abs(d.derivative()(p.z)) / (2 * pi)).epsilon(1e-12));
            CHECK(p.density > 0.0);
            if (p.active) {
                const double ui = ps[i - 1](p.z).real();
                for (std::size_t m = 0; m < ps.size(); ++m)
                    CHECK(ui >= ps[m](p.z).real() - tie_tolerance(ui) - 1e-10 * scale);
            }
        }
        // consecutive samples are close and move outward
        for (std::size_t k = 1; k < br.trace.size(); ++k) {
            CHECK(br.trace[k].arclen == doctest::Approx(std::abs(br.trace[k].z - br.trace[k - 1].z)).epsilon(1e-12));
            CHECK(br.trace[k].arclen <= std::abs(br.trace[k - 1].z) / 50.0);
        }
        CHECK(std::abs(br.trace.front().z) == doctest::Approx(locus.r0).epsilon(1e-12));
        CHECK(br.outer_radius() == doctest::Approx(locus.r_max).epsilon(1e-12));
    }
}

} // namespace

TEST_CASE("regularity radius examples")
{
    CHECK(regularity_radius(kHalfPlane) == doctest::Approx(2.0));
    CHECK(regularity_radius(kQuadrants) == doctest::Approx(2.0));
    const std::vector<ComplexPoly> same{kZ, kZ};
    CHECK_THROWS_WITH_AS(regularity_radius(same), doctest::Contains("locus empty"), LocusError);
    // (z - 3)(z + 1) against 0: D D' = 2z^3 - 6z^2 - 2z + 6, Cauchy ratio 6 / 2 = 3
    const std::vector<ComplexPoly> shifted{ComplexPoly{-3.0, -2.0, 1.0}, ComplexPoly{}};
    CHECK(regularity_radius(shifted) == doctest::Approx(2.0 * (1.0 + 3.0)));
}

TEST_CASE("half plane: two vertical branches with constant density")
{
    const auto locus = trace_branches(kHalfPlane, 2.0, 50.0);
    REQUIRE(locus.branches.size() == 2);
    for (const auto& br : locus.branches) {
        CHECK(br.pair == std::pair{1, 2});
        CHECK(br.active);
        for (const auto& p : br.trace) {
            CHECK(std::abs(p.z.real()) < 1e-10);
            CHECK(p.density == doctest::Approx(1.0 / (2 * pi)));
        }
    }
    CHECK(locus.b == 0.0);
    CHECK(locus.c0 == doctest::Approx(1.0 / (2 * pi)));
    check_trace_invariants(kHalfPlane, locus);
}

TEST_CASE("quadrants: four diagonal branches with density 2|z|/pi")
{
    const auto locus = trace_branches(kQuadrants, 2.0, 50.0);
    REQUIRE(locus.branches.size() == 4);
    for (const auto& br : locus.branches)
        for (const auto& p : br.trace) {
            CHECK(std::abs(std::abs(p.z.real()) - std::abs(p.z.imag())) < 1e-9);
            CHECK(p.density == doctest::Approx(2.0 * std::abs(p.z) / pi).epsilon(1e-12));
        }
    CHECK(locus.b == 1.0);
    CHECK(locus.c0 == doctest::Approx(2.0 / pi));
    check_trace_invariants(kQuadrants, locus);
}

TEST_CASE("equal exponents give no branches")
{
    const std::vector<ComplexPoly> same{kZ, kZ};
    CHECK(trace_branches(same, 1.0, 10.0).branches.empty());
    CHECK(riesz_of_max(same, 5.0, 1.0) == 0.0);
    CHECK(riesz_of_max(std::vector<ComplexPoly>{kZ}, 5.0, 1.0) == 0.0);
    CHECK_THROWS_AS(trace_branches(kHalfPlane, 5.0, 5.0), ValidationError);
}

TEST_CASE("branch asymptotics examples")
{
    struct Case {
        std::vector<ComplexPoly> ps;
        double b, c;
    };
    const std::vector<Case> cases{
        {kHalfPlane, 0.0, 1.0 / (2 * pi)},
        {kQuadrants, 1.0, 2.0 / pi},
        {{ComplexPoly::monomial(3.0, 2), ComplexPoly{}}, 1.0, 3.0 / pi},
        {{ComplexPoly{0.0, 0.0, 0.0, cplx{0.0, 0.5}}, ComplexPoly{}}, 2.0, 1.5 / (2 * pi)},
    };
    for (const auto& cs : cases) {
        const double r0 = regularity_radius(cs.ps);
        const auto locus = trace_branches(cs.ps, r0, 20.0 * r0);
        for (const auto& br : locus.branches) {
            const auto a = branch_asymptotics(br, r0);
            CHECK(a.b == cs.b);
            CHECK(a.c == doctest::Approx(cs.c).epsilon(1e-14));
            CHECK(std::abs(a.b_fit - a.b) <= 0.05);
            CHECK(std::abs(a.c_fit - a.c) <= 0.05 * a.c);
        }
        CHECK(locus.branches.size() == 2u * static_cast<unsigned>(cs.ps[0].degree()));
    }
    const auto short_trace = trace_branches(kHalfPlane, 2.0, 6.0);
    CHECK_THROWS_WITH_AS(branch_asymptotics(short_trace.branches.front(), 2.0), doctest::Contains("increase r_max"),
                         LocusError);
}

TEST_CASE("riesz_of_max closed forms")
{
    const double r0 = 2.0;
    for (double t : {4.0, 10.0, 30.0}) {
        CHECK(riesz_of_max(kHalfPlane, t, r0) == doctest::Approx((t - r0) / pi).epsilon(1e-9));
        // four branches, each carrying int 2 s / pi ds
        CHECK(riesz_of_max(kQuadrants, t, r0) == doctest::Approx(4.0 * (t * t - r0 * r0) / pi).epsilon(1e-6));
    }
    const auto locus = trace_branches(kHalfPlane, r0, 40.0);
    CHECK(riesz_of_max(locus, 40.0) == doctest::Approx(38.0 / pi).epsilon(1e-9));
    CHECK_THROWS_AS(riesz_of_max(locus, 41.0), ValidationError);
    CHECK_THROWS_AS(riesz_of_max(locus, 1.0), ValidationError);
}

TEST_CASE("locus mass matches the Jensen-route finite difference")
{
    for (const auto& ps : {kHalfPlane, kQuadrants, kStrip}) {
        const double r0 = regularity_radius(ps);
        const auto locus = trace_branches(ps, r0, 50.0);
        for (double t : {2 * r0, 10.0, 25.0, 50.0}) {
            const double oracle_mass = jensen_nu(ps, t) - jensen_nu(ps, r0);
            CHECK(riesz_of_max(locus, t) == doctest::Approx(oracle_mass).epsilon(0.01));
        }
    }
}

TEST_CASE("randomized loci: invariants and the Jensen oracle, including inactive stretches")
{
    std::mt19937_64 rng(47);
    int with_inactive = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const auto ps = random_exponents(rng, 3 + trial % 2, 2);
        const double r0 = regularity_radius(ps);
        const double r_max = std::max(8.0 * r0, 40.0);
        const auto locus = trace_branches(ps, r0, r_max);
        check_trace_invariants(ps, locus);
        for (const auto& br : locus.branches)
            for (const auto& p : br.trace)
                if (!p.active) {
                    ++with_inactive;
                    break;
                }
        for (double t : {2.0 * r0, 0.25 * r_max, 0.5 * r_max}) {
            const double oracle_mass = jensen_nu(ps, t) - jensen_nu(ps, r0);
            CHECK(riesz_of_max(locus, t) == doctest::Approx(oracle_mass).epsilon(0.01));
        }
    }
    // the family is meant to exercise the activity bookkeeping
    CHECK(with_inactive > 0);
}

TEST_CASE("branch count bound")
{
    SUBCASE("examples")
    {
        auto bc = count_branch_bound(kHalfPlane, 0.0);
        CHECK(bc.count == 2);
        CHECK(bc.bound == 4);
        CHECK(bc.ok);
        bc = count_branch_bound(kQuadrants, 0.0);
        CHECK(bc.count == 4);
        CHECK(bc.bound == 4);
        CHECK(bc.ok);
        bc = count_branch_bound(std::vector<ComplexPoly>{kZ}, 0.0);
        CHECK(bc.count == 0);
    }
    SUBCASE("randomized tuples within the degree constraint")
    {
        std::mt19937_64 rng(53);
        for (double sigma : {0.0, 0.5, 1.0}) {
            const int max_deg = static_cast<int>(std::floor(2 * sigma + 2));
            for (int trial = 0; trial < 200; ++trial) {
                const int n = 1 + static_cast<int>(rng() % 5);
                std::vector<ComplexPoly> ps;
                for (int j = 0; j < n; ++j)
                    ps.emplace_back(oracle::random_coeffs(rng, static_cast<int>(rng() % (max_deg + 1))));
                // count by hand: two rays per degree of every pairwise difference
                long count = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        count += 2 * std::max(0, (ps[i] - ps[j]).degree());
                const auto bc = count_branch_bound(ps, sigma);
                CHECK(bc.count == count);
                CHECK(bc.bound == static_cast<long>(std::ceil(2.0 * n * (n - 1) * (sigma + 1) - 1e-9)));
                CHECK(bc.ok);
            }
        }
    }
}

TEST_CASE("traced branch count matches the ray count outside r0")
{
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        const auto ps = random_exponents(rng, 2 + trial % 3, 3);
        const double r0 = regularity_radius(ps);
        const auto locus = trace_branches(ps, r0, 4 * r0);
        CHECK(static_cast<long>(locus.branches.size()) == count_branch_bound(ps, 1.0).count);
    }
}

TEST_CASE("harvested tie points are ties of the two largest u_j")
{
    const HolomorphicCurve f({CurveComponent::poly_exp(kZ, kZ), CurveComponent::exp_poly(ComplexPoly{0.0, cplx{0.0, 1.0}}),
                              CurveComponent::exp_poly({})},
                             0.0);
    const std::vector<double> radii{3.0, 7.0, 15.0};
    const auto ties = harvest_tie_points(f, radii);
    CHECK(ties.size() >= 6);
    for (const auto& tp : ties) {
        const auto lm = component_log_moduli(f, tp.z);
        const double top = std::max({lm.u[0], lm.u[1], lm.u[2]});
        const double eta = 1e-9 * std::max(1.0, std::abs(top));
        CHECK(tp.m != tp.k);
        CHECK(std::abs(lm.u[tp.m] - lm.u[tp.k]) <= eta);
        CHECK(lm.u[tp.m] >= top - eta);
    }
}
