#pragma once

#include <complex>
#include <initializer_list>
#include <limits>
#include <vector>

namespace nevlab {

using cplx = std::complex<double>;

/// Dense polynomial in one complex variable. Coefficient of z^k is stored at index k;
/// trailing zeros are trimmed so the last stored coefficient is nonzero (or the vector is empty).
class ComplexPoly {
public:
    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<cplx> coeffs);
    ComplexPoly(std::initializer_list<cplx> coeffs);

    static ComplexPoly constant(cplx c) { return ComplexPoly({c}); }
    static ComplexPoly monomial(cplx c, int degree);

    /// Degree, or -1 for the zero polynomial (stands in for -infinity).
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
    cplx coeff(int k) const noexcept;
    cplx leading() const noexcept { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

    cplx operator()(cplx z) const noexcept;
    /// Value and first derivative in a single Horner pass.
    void eval_with_derivative(cplx z, cplx& value, cplx& derivative) const noexcept;

    ComplexPoly derivative() const;
    /// p(a + s z)
    ComplexPoly compose_affine(cplx a, cplx s) const;

    /// Sum of |a_k| r^k, an upper bound for |p| on |z| = r.
    double max_modulus_bound(double r) const noexcept;
    /// Sum of k |a_k| r^k, bounds the angular derivative of p(r e^{i theta}).
    double angular_derivative_bound(double r) const noexcept;

    /// Largest |a_k / a_m| over k < m (m = degree). Every root satisfies |z| <= 1 + this value.
    /// Zero for monomials and constants; undefined (returns 0) for the zero polynomial.
    double cauchy_ratio() const noexcept;
    double cauchy_bound() const noexcept { return 1.0 + cauchy_ratio(); }

    /// Integral of Re p(r e^{i theta}) over [theta0, theta1], in closed form.
    double integrate_real_part_on_arc(double r, double theta0, double theta1) const noexcept;

    friend ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b);
    friend ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b);
    friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
    friend ComplexPoly operator*(cplx s, const ComplexPoly& a);
    ComplexPoly operator-() const;
    friend bool operator==(const ComplexPoly& a, const ComplexPoly& b) = default;

private:
    void trim();
    std::vector<cplx> coeffs_;
};

} // namespace nevlab
