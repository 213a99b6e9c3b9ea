#pragma once

#include "nevlab/poly.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nevlab {

/// Q(z), an entire function with finitely many zeros.
struct Poly {
    ComplexPoly q;
};
/// exp(P(z)), never vanishes.
struct ExpPoly {
    ComplexPoly p;
};
/// Q(z) exp(P(z)), vanishes exactly at the zeros of Q.
struct PolyExp {
    ComplexPoly q;
    ComplexPoly p;
};

/// f(z) = amplitude * exp(exponent), f'(z) = amplitude_derivative * exp(exponent).
/// Keeping the exponential factored out is what lets every downstream quantity stay in log domain.
struct ComponentJet {
    cplx amplitude;
    cplx amplitude_derivative;
    cplx exponent;
};

struct ComponentValue {
    double log_modulus = 0.0; ///< log|f(z)|, -inf at a zero
    cplx phase{1.0, 0.0};     ///< f / |f|, 1 at a zero
    std::optional<cplx> value; ///< f(z) when |f(z)| fits in a double
};

class CurveComponent {
public:
    using Variant = std::variant<Poly, ExpPoly, PolyExp>;

    CurveComponent(Poly v) : form_(std::move(v)) {}
    CurveComponent(ExpPoly v) : form_(std::move(v)) {}
    CurveComponent(PolyExp v) : form_(std::move(v)) {}

    static CurveComponent poly(ComplexPoly q) { return Poly{std::move(q)}; }
    static CurveComponent exp_poly(ComplexPoly p) { return ExpPoly{std::move(p)}; }
    static CurveComponent poly_exp(ComplexPoly q, ComplexPoly p) { return PolyExp{std::move(q), std::move(p)}; }

    const Variant& form() const noexcept { return form_; }
    bool is_exp_poly() const noexcept { return std::holds_alternative<ExpPoly>(form_); }
    /// True when the function is zero-free (ExpPoly, or a nonzero constant amplitude).
    bool is_nonvanishing() const noexcept;
    bool is_identically_zero() const noexcept;

    /// Polynomial factor Q (1 for ExpPoly) and exponent P (0 for Poly).
    const ComplexPoly& amplitude_poly() const noexcept { return q_(); }
    const ComplexPoly& exponent_poly() const noexcept { return p_(); }

    ComponentJet jet(cplx z) const noexcept;
    /// f'/f; infinite at zeros of the polynomial factor.
    cplx log_derivative(cplx z) const noexcept;
    /// Multiplies by exp(shift); the result is always PolyExp unless the input was ExpPoly.
    CurveComponent times_exp(const ComplexPoly& shift) const;

    std::string kind() const;

private:
    const ComplexPoly& q_() const noexcept;
    const ComplexPoly& p_() const noexcept;
    Variant form_;
};

ComponentValue eval_component(const CurveComponent& c, cplx z) noexcept;

/// Homogeneous representation (f_0, ..., f_n) of a curve into P^n with f_n = 1 and
/// f_1..f_n of the form exp(P_j), deg P_j <= floor(2 sigma + 2).
class HolomorphicCurve {
public:
    /// Throws ValidationError naming the first violated invariant.
    HolomorphicCurve(std::vector<CurveComponent> components, double sigma, std::optional<double> K = std::nullopt);

    int dimension() const noexcept { return static_cast<int>(components_.size()) - 1; }
    std::span<const CurveComponent> components() const noexcept { return components_; }
    const CurveComponent& component(int j) const { return components_.at(static_cast<std::size_t>(j)); }
    double sigma() const noexcept { return sigma_; }
    std::optional<double> K() const noexcept { return K_; }
    HolomorphicCurve with_K(double K) const;

    /// Exponents P_1..P_n of the reduced curve (f_1, ..., f_n).
    std::vector<ComplexPoly> reduced_exponents() const;
    /// floor(2 sigma + 2)
    int max_exponent_degree() const noexcept;

private:
    std::vector<CurveComponent> components_;
    double sigma_;
    std::optional<double> K_;
};

/// log sqrt(sum |f_j|^2); the span form accepts unnormalized representations.
double log_norm(std::span<const CurveComponent> f, cplx z) noexcept;
double log_norm(const HolomorphicCurve& f, cplx z) noexcept;

/// Fubini-Study derivative ||f'||(z).
double spherical_derivative(std::span<const CurveComponent> f, cplx z) noexcept;
double spherical_derivative(const HolomorphicCurve& f, cplx z) noexcept;

struct LogModuli {
    std::vector<double> u;  ///< u_j = log|f_j|, j = 0..n
    double u_star = 0.0;    ///< max over j = 1..n
    std::vector<int> argmax; ///< indices j in 1..n with u_j >= u_star - eta
};

/// Tie tolerance for argmax sets: 1e-9 * max(1, |u|).
double tie_tolerance(double u) noexcept;

LogModuli component_log_moduli(const HolomorphicCurve& f, cplx z);

struct GrowthEstimate {
    double sigma_hat = 0.0;
    double K_hat = 0.0;
    std::vector<double> radii;
    std::vector<double> circle_sup; ///< sup of ||f'|| on each sampled circle
};

/// Least-squares growth exponent of circle suprema of ||f'|| and the finite-radius surrogate for K.
GrowthEstimate estimate_growth(const HolomorphicCurve& f, double r_min, double r_max, int circles);

/// Supremum of ||f'|| over |z| = r (dense scan refined by Brent).
double spherical_derivative_circle_sup(std::span<const CurveComponent> f, double r);

} // namespace nevlab
