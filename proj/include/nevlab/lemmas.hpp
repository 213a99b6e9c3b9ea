#pragma once

#include "nevlab/poly.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace nevlab {

struct Disc {
    cplx center{0.0, 0.0};
    double radius = 1.0;
};

/// Nonnegative boundary density sampled on a uniform theta grid of the disc boundary.
/// Held as the Fourier coefficients of the samples; v = Re F with F a polynomial in (z - a)/R.
struct PoissonData {
    std::vector<double> samples;
};
/// v(z) = Re p(z) + constant.
struct RealPartPoly {
    ComplexPoly p;
    double constant = 0.0;
};
/// v(z) = Re(num(z) / den(z)) + constant; den must not vanish on the open disc.
struct RealPartRational {
    ComplexPoly num;
    ComplexPoly den;
    double constant = 0.0;
};

class DiscHarmonic {
public:
    using Representation = std::variant<PoissonData, RealPartPoly, RealPartRational>;

    DiscHarmonic(Representation rep, Disc disc);

    const Disc& disc() const noexcept { return disc_; }
    const Representation& representation() const noexcept { return rep_; }

    double value(cplx z) const;
    /// Gradient as the complex number d/dx + i d/dy.
    cplx gradient(cplx z) const;
    /// Same function in the coordinates w = (z - a) / R on the unit disc.
    DiscHarmonic to_unit_disc() const;

private:
    Representation rep_;
    Disc disc_;
    ComplexPoly fourier_; ///< analytic part for PoissonData: v = Re fourier_((z - a) / R)
};

struct Atom {
    cplx location;
    double weight = 0.0;
};

/// v = sum w G_disc(z, zeta) + harmonic part, with Riesz measure exactly the listed atoms.
class DiscSuperharmonic {
public:
    DiscSuperharmonic(std::vector<Atom> atoms, DiscHarmonic harmonic);

    const Disc& disc() const noexcept { return harmonic_.disc(); }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const DiscHarmonic& harmonic_part() const noexcept { return harmonic_; }

    double value(cplx z) const;
    cplx gradient(cplx z) const;
    /// Total weight of atoms in the open disc B(a, R/2).
    double mass_in_half_disc() const;
    DiscSuperharmonic to_unit_disc() const;

private:
    std::vector<Atom> atoms_;
    DiscHarmonic harmonic_;
};

/// Green function of the unit disc, log|1 - z conj(zeta)| - log|z - zeta|; +inf at z = zeta.
double green_disc(cplx z, cplx zeta) noexcept;
/// Gradient in z of green_disc, as d/dx + i d/dy.
cplx green_disc_gradient(cplx z, cplx zeta) noexcept;
/// Radial derivative of G(., zeta) at a point of the unit circle: -(1 - |zeta|^2) / |z - zeta|^2.
double green_boundary_normal_derivative(cplx z, cplx zeta) noexcept;

struct GreenMinimum {
    double value = 0.0;
    double theta = 0.0; ///< argument of the minimizing boundary point
};

/// Minimum over |z| = 1 of |dG/d|z|| for fixed zeta, found numerically.
GreenMinimum minimize_green_normal_derivative(cplx zeta);

struct LemmaCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

/// v(a) against 2 R |grad v(z1)|. Throws ValidationError when v(z1) is not 0 to 1e-10.
LemmaCheck verify_lemma1(const DiscHarmonic& v, cplx z1);
/// mu_v(B(a, R/2)) against 3 R |grad v(z1)|.
LemmaCheck verify_lemma2(const DiscSuperharmonic& v, cplx z1);

struct Lemma1Instance {
    DiscHarmonic v;
    cplx z1;
};
struct Lemma2Instance {
    DiscSuperharmonic v;
    cplx z1;
};
using LemmaInstance = std::variant<Lemma1Instance, Lemma2Instance>;

inline constexpr int kPoissonGrid = 4096;

std::vector<Lemma1Instance> random_lemma1_family(std::uint64_t seed, int count);
std::vector<Lemma2Instance> random_lemma2_family(std::uint64_t seed, int count);
/// Alternating harmonic and superharmonic instances, deterministic per seed.
std::vector<LemmaInstance> random_lemma_family(std::uint64_t seed, int count);

struct HarnessFailure {
    int lemma = 0; ///< 1 or 2
    int index = 0;
    double margin = 0.0;
};

struct HarnessReport {
    std::vector<double> lemma1_margins;
    std::vector<double> lemma2_margins;
    double lemma1_min = 0.0;
    double lemma2_min = 0.0;
    double green_minimum = 0.0;
    std::vector<HarnessFailure> failures; ///< instances with margin < -1e-8
};

inline constexpr double kLemmaSlack = 1e-8;

/// Runs `count` instances of each lemma.
HarnessReport run_lemma_harness(std::uint64_t seed, int count);

} // namespace nevlab
