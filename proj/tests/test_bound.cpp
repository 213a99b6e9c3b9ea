#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include <nevlab/bound.hpp>
#include <nevlab/characteristic.hpp>
#include <nevlab/error.hpp>
#include <nevlab/io.hpp>

#include <string>

using namespace nevlab;
using oracle::pi;

namespace {

const ComplexPoly kZ{0.0, 1.0};
const ComplexPoly kMinusZ{0.0, -1.0};

HolomorphicCurve fixture(const std::string& name) { return load_curve_spec(std::string(NEVLAB_FIXTURES) + "/" + name + ".yaml"); }

std::vector<double> linear_grid(double lo, double hi, int count)
{
    std::vector<double> r(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        r[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
    return r;
}

const char* const kGallery[] = {"z_one", "exp_one", "zexp_iexp_one", "gauss_one", "exp_pair", "constant"};

} // namespace

TEST_CASE("theorem constant arithmetic")
{
    CHECK(theorem_constant(1, 0.0, 0.01) == doctest::Approx(28.02).epsilon(1e-14));
    CHECK(theorem_constant(2, 0.0, 0.01) == doctest::Approx(114.03).epsilon(1e-14));
    CHECK(theorem_constant(1, 0.0) == theorem_constant(1, 0.0, kDefaultEpsilon));
    // dominant term 6 4^s n (n+1)^2 / (s+1) makes the ratio tend to 4
    CHECK(theorem_constant(3, 41.0) / theorem_constant(3, 40.0) == doctest::Approx(4.0).epsilon(0.03));
    for (int n = 1; n < 6; ++n)
        for (double s = 0.0; s < 3.0; s += 0.25) {
            CHECK(theorem_constant(n + 1, s) > theorem_constant(n, s));
            CHECK(theorem_constant(n, s + 0.25) > theorem_constant(n, s));
        }
}

TEST_CASE("reduced characteristic bound arithmetic")
{
    CHECK(prop4_bound(1, 0.0, 1.0, 1.0) == doctest::Approx(24.0));
    CHECK(prop4_bound(2, 0.0, 1.0, 3.0) == doctest::Approx(108.0 * 3.0));
    CHECK(prop4_bound(2, 1.0, 0.5, 2.0) == doctest::Approx(6.0 * 4.0 * 0.5 * 18.0 / 2.0 * 4.0));
    // closed-form T* = r / pi of max(Re z, 0) sits far below it
    const std::vector<ComplexPoly> half_plane{kZ, ComplexPoly{}};
    for (double r : {1.0, 10.0, 100.0})
        CHECK(reduced_characteristic(half_plane, r) <= prop4_bound(2, 0.0, 1.0, r));
}

TEST_CASE("preprocess_zeros")
{
    const auto with_zero = fixture("zexp_iexp_one");
    CHECK(preprocess_zeros(with_zero, 1.0).component(0).kind() == with_zero.component(0).kind());

    const HolomorphicCurve same({CurveComponent::exp_poly(kZ), CurveComponent::exp_poly(kZ), CurveComponent::exp_poly({})}, 0.0);
    CHECK_THROWS_WITH_AS(preprocess_zeros(same, -1.0), doctest::Contains("vanishes identically"), ValidationError);
    CHECK_THROWS_WITH_AS(preprocess_zeros(same, 1.0), doctest::Contains("zero-free"), ValidationError);

    const HolomorphicCurve opposite({CurveComponent::exp_poly(kZ), CurveComponent::exp_poly(kMinusZ), CurveComponent::exp_poly({})}, 0.0);
    CHECK_THROWS_WITH_AS(preprocess_zeros(opposite, 1.0), doctest::Contains("supply f_0 with zeros"), ValidationError);
}

TEST_CASE("tie-point derivative examples")
{
    SUBCASE("(z, 1) at z = 1 is an equality case")
    {
        const std::vector<TiePoint> pts{{1.0, 0, 1}};
        const auto res = prop1_check(fixture("z_one"), pts);
        CHECK(std::abs(res.worst_margin) <= 1e-15);
        CHECK(res.ok);
        CHECK(res.points == 1);
    }
    SUBCASE("(e^z, e^{-z}, 1) on the imaginary axis")
    {
        const auto f = fixture("exp_pair");
        for (double y : {1.0, -2.5, 7.0}) {
            const std::vector<TiePoint> pts{{cplx{0.0, y}, 0, 1}, {cplx{0.0, y}, 0, 2}, {cplx{0.0, y}, 1, 2}};
            const auto res = prop1_check(f, pts);
            CHECK(res.ok);
            CHECK(res.worst_margin >= 0.0);
            // the (0, 1) pair has |grad u_0 - grad u_1| = 2, so ||f'|| >= 2/3 there
            CHECK(spherical_derivative(f, cplx{0.0, y}) >= 2.0 / 3.0);
        }
    }
    SUBCASE("a point that is not a tie is rejected")
    {
        const std::vector<TiePoint> pts{{2.0, 0, 1}};
        CHECK_THROWS_WITH_AS(prop1_check(fixture("z_one"), pts), doctest::Contains("not a tie"), ValidationError);
    }
    SUBCASE("harvested ties of the gallery")
    {
        for (const char* name : kGallery) {
            const auto f = fixture(name);
            const auto ties = harvest_tie_points(f, std::vector<double>{1.0, 3.0, 8.0, 15.0});
            CHECK(prop1_check(f, ties).ok);
        }
    }
}

TEST_CASE("distance to the maximum examples")
{
    const auto radii = linear_grid(1.0, 30.0, 12);
    SUBCASE("(e^z, 1): sup u is r + O(1) against 2.01 r")
    {
        const auto p = prop2_margin(fixture("exp_one"), 0.5, 0.01, radii);
        CHECK(p.ok);
        for (const auto& row : p.rows) {
            CHECK(row.excess == doctest::Approx(row.r + 0.5 * std::log1p(std::exp(-2 * row.r))).epsilon(1e-9));
            CHECK(row.bound == doctest::Approx(2.01 * row.r));
        }
        CHECK(p.threshold == radii.front());
    }
    SUBCASE("(z, 1): log sqrt(1 + r^2)")
    {
        const auto p = prop2_margin(fixture("z_one"), 1.0, 0.01, radii);
        CHECK(p.ok);
        for (const auto& row : p.rows)
            CHECK(row.excess == doctest::Approx(0.5 * std::log1p(row.r * row.r)).epsilon(1e-12));
    }
    SUBCASE("constant curve")
    {
        const auto p = prop2_margin(fixture("constant"), 1.0, 0.01, radii);
        CHECK(p.ok);
        for (const auto& row : p.rows)
            CHECK(row.excess == doctest::Approx(0.5 * std::log(2.0)));
    }
    SUBCASE("an undersized K fails")
    {
        const auto p = prop2_margin(fixture("exp_one"), 0.1, 0.01, radii);
        CHECK_FALSE(p.ok);
    }
}

TEST_CASE("jump density asymptotics examples")
{
    SUBCASE("(g, e^z, e^{-z}, 1): difference 2z, c0 = 1/pi")
    {
        const std::vector<ComplexPoly> ps{kZ, kMinusZ, ComplexPoly{}};
        const double r0 = regularity_radius(ps);
        const auto locus = trace_branches(ps, r0, 40.0);
        const auto res = prop3_check(locus, 3, 0.0, 0.5);
        CHECK(res.b == 0.0);
        CHECK(res.c0 == doctest::Approx(1.0 / pi));
        CHECK(res.c0_ceiling == doctest::Approx(3.0 * 0.5 * 4.0));
        CHECK(res.b_ok);
        CHECK(res.c0_ok);
        // the c0 ceiling is 12 K here, so K below 1 / (12 pi) must fail
        CHECK_FALSE(prop3_check(locus, 3, 0.0, 0.9 / (12 * pi)).c0_ok);
    }
    SUBCASE("degree above sigma fails the b ceiling")
    {
        const std::vector<ComplexPoly> ps{ComplexPoly::monomial(1.0, 2), ComplexPoly{}};
        const auto locus = trace_branches(ps, 2.0, 20.0);
        const auto res = prop3_check(locus, 2, 0.0, 1.0);
        CHECK(res.b == 1.0);
        CHECK_FALSE(res.b_ok);
        CHECK(prop3_check(locus, 2, 1.0, 1.0).b_ok);
    }
    SUBCASE("empty locus is vacuous")
    {
        LocusSummary empty;
        empty.b = -std::numeric_limits<double>::infinity();
        empty.c0 = 0.0;
        const auto res = prop3_check(empty, 1, 0.0, 1.0);
        CHECK(res.b_ok);
        CHECK(res.c0_ok);
    }
}

TEST_CASE("verify_theorem on the exponential")
{
    const auto rep = verify_theorem(fixture("exp_one"), linear_grid(1.0, 50.0, 12));
    CHECK(rep.all_ok());
    CHECK(rep.K == 0.5);
    CHECK_FALSE(rep.K_estimated);
    CHECK(rep.theorem_constant == doctest::Approx(28.02));
    const auto& last = rep.rows.back();
    CHECK(last.T / last.r == doctest::Approx(1.0 / pi).epsilon(0.03));
    CHECK(last.T_bound == doctest::Approx(14.01 * 50.0));
    CHECK(rep.prop3.c0_ceiling == doctest::Approx(3.0 * rep.K * 2.0));
}

TEST_CASE("verify_theorem on the constant curve")
{
    const auto rep = verify_theorem(fixture("constant"), linear_grid(1.0, 20.0, 8));
    CHECK(rep.all_ok());
    for (const auto& row : rep.rows) {
        CHECK(std::abs(row.T) <= 1e-12);
        CHECK(row.T_star == 0.0);
    }
}

TEST_CASE("verify_theorem regression: curve with a zero in f_0, n = 2")
{
    // values recorded from the first verified run; T and T* also checked independently below
    const auto f = fixture("zexp_iexp_one");
    const auto radii = linear_grid(1.0, 20.0, 8);
    const auto rep = verify_theorem(f, radii);
    CHECK(rep.all_ok());
    CHECK(rep.K_estimated);
    CHECK(rep.K == doctest::Approx(0.9617851607865693).epsilon(1e-6));
    CHECK(rep.rows.back().T == doctest::Approx(11.714568957886259).epsilon(1e-8));
    // independent circle mean of u = log sqrt(|z|^2 e^{2x} + e^{-2y} + 1), u(0) = log sqrt 2
    auto u = [](cplx z) {
        const double a = std::log(std::abs(z)) + z.real(), b = -z.imag(), m = std::max({a, b, 0.0});
        return m + 0.5 * std::log(std::exp(2 * (a - m)) + std::exp(2 * (b - m)) + std::exp(-2 * m));
    };
    const double oracle_T =
        oracle::circle_mean([&](double t) { return u(std::polar(20.0, t)); }, 200000) - 0.5 * std::log(2.0);
    CHECK(rep.rows.back().T == doctest::Approx(oracle_T).epsilon(1e-9));
    // u* = max(-Im z, 0): T* = r / pi
    for (const auto& row : rep.rows)
        CHECK(row.T_star == doctest::Approx(row.r / pi).epsilon(1e-12));
    CHECK(rep.prop3.b == 0.0);
    CHECK(rep.prop3.c0 == doctest::Approx(1.0 / (2 * pi)));
    CHECK(rep.prop3.c0_ceiling == doctest::Approx(3.0 * rep.K * 3.0));
    CHECK(rep.branch_count.count == 2);
}

TEST_CASE("theorem tail and doubling envelope on every gallery curve")
{
    for (const std::string name : kGallery) {
        CAPTURE(name);
        const auto f = fixture(name);
        const auto radii = linear_grid(2.0, 24.0, 12);
        const auto rep = verify_theorem(f, radii);
        CHECK(rep.all_ok());
        // T(2r) / T(r) <= 2^{2 sigma + 2} (1 + 0.1) at the tail
        for (double r : {radii[radii.size() - 3] / 2, radii.back() / 2}) {
            const double lo = characteristic_jensen(f, r), hi = characteristic_jensen(f, 2 * r);
            if (lo > 0.0)
                CHECK(hi / lo <= std::pow(2.0, 2 * f.sigma() + 2) * 1.1);
        }
    }
}

TEST_CASE("verify_theorem input checks")
{
    const auto f = fixture("exp_one");
    CHECK_THROWS_AS(verify_theorem(f, std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(verify_theorem(f, std::vector<double>{2.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(verify_theorem(f, std::vector<double>{1.0, 2.0}, 0.0), ValidationError);
}
