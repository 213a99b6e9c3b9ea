#pragma once

#include "nevlab/curve.hpp"

#include <span>
#include <vector>

namespace nevlab {

inline constexpr double kDefaultTol = 1e-8;
inline constexpr double kCrossCheckGate = 1e-6;

/// T(r) as int_0^r n(t)/t dt with n(t) the Cartan mass of |z| <= t. Internally the double integral
/// is folded into int_0^r s log(r/s) A(s) ds, A(s) = (1/pi) int ||f'||^2(s e^{it}) dt.
double characteristic_area(const HolomorphicCurve& f, double r, double tol = kDefaultTol);

/// T(r) as the circle mean of u minus u(0). No zero correction is needed because u >= 0 is
/// averaged directly rather than log|f_0|.
double characteristic_jensen(const HolomorphicCurve& f, double r, double tol = kDefaultTol);

/// n(t) = (1/pi) int_{|z|<=t} ||f'||^2 dm.
double counting_function(const HolomorphicCurve& f, double t, double tol = kDefaultTol);

/// T*(r) = mean of u* on |z| = r minus u*(0), u* = max_j Re P_j over the given exponents.
/// Integrates exactly on each arc between kinks.
double reduced_characteristic(std::span<const ComplexPoly> exponents, double r, double tol = kDefaultTol);
double reduced_characteristic(const HolomorphicCurve& f, double r, double tol = kDefaultTol);

/// Central finite difference t dT/dt of the Jensen route; equals n(t) at smooth points.
double counting_from_jensen(const HolomorphicCurve& f, double t, double rel_step = 1e-3,
                            double tol = kDefaultTol);

struct CharacteristicTable {
    std::vector<double> radii;
    std::vector<double> T_area;
    std::vector<double> T_jensen;
    std::vector<double> n_counting;

    /// max |T_area - T_jensen| over the grid
    double max_route_gap() const;
};

CharacteristicTable characteristic_table(const HolomorphicCurve& f, std::span<const double> radii,
                                         double tol = kDefaultTol);

} // namespace nevlab
