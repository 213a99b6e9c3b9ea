#include "nevlab/poly.hpp"

#include <algorithm>
#include <cmath>

namespace nevlab {

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ComplexPoly::ComplexPoly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

ComplexPoly ComplexPoly::monomial(cplx c, int degree)
{
    std::vector<cplx> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return ComplexPoly(std::move(v));
}

void ComplexPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == cplx{})
        coeffs_.pop_back();
}

cplx ComplexPoly::coeff(int k) const noexcept
{
    if (k < 0 || k >= static_cast<int>(coeffs_.size()))
        return {};
    return coeffs_[static_cast<std::size_t>(k)];
}

cplx ComplexPoly::operator()(cplx z) const noexcept
{
    cplx acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

void ComplexPoly::eval_with_derivative(cplx z, cplx& value, cplx& derivative) const noexcept
{
    value = {};
    derivative = {};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        derivative = derivative * z + value;
        value = value * z + *it;
    }
}

ComplexPoly ComplexPoly::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::compose_affine(cplx a, cplx s) const
{
    // Horner in polynomial arithmetic: acc = acc * (a + s z) + c_k
    const ComplexPoly lin({a, s});
    ComplexPoly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * lin + ComplexPoly({*it});
    return acc;
}

double ComplexPoly::max_modulus_bound(double r) const noexcept
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * r + std::abs(*it);
    return acc;
}

double ComplexPoly::angular_derivative_bound(double r) const noexcept
{
    double acc = 0.0;
    double rk = 1.0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        acc += static_cast<double>(k) * std::abs(coeffs_[k]) * rk;
        rk *= r;
    }
    return acc;
}

double ComplexPoly::cauchy_ratio() const noexcept
{
    if (coeffs_.size() <= 1)
        return 0.0;
    const double lead = std::abs(coeffs_.back());
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k)
        m = std::max(m, std::abs(coeffs_[k]) / lead);
    return m;
}

double ComplexPoly::integrate_real_part_on_arc(double r, double theta0, double theta1) const noexcept
{
    // int Re(a_k r^k e^{ik t}) dt = Re(a_k r^k (e^{ik t1} - e^{ik t0}) / (ik)), k >= 1
    double acc = coeff(0).real() * (theta1 - theta0);
    double rk = 1.0;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        rk *= r;
        const double kd = static_cast<double>(k);
        const cplx e1 = std::polar(1.0, kd * theta1);
        const cplx e0 = std::polar(1.0, kd * theta0);
        acc += (coeffs_[k] * rk * (e1 - e0) / cplx(0.0, kd)).real();
    }
    return acc;
}

ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b)
{
    std::vector<cplx> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return ComplexPoly(std::move(v));
}

ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b)
{
    std::vector<cplx> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
    return ComplexPoly(std::move(v));
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<cplx> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ComplexPoly(std::move(v));
}

ComplexPoly operator*(cplx s, const ComplexPoly& a)
{
    std::vector<cplx> v(a.coeffs_);
    for (auto& c : v)
        c *= s;
    return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::operator-() const { return cplx(-1.0) * *this; }

} // namespace nevlab
