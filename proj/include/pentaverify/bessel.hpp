#pragma once

// Modified Bessel function of the first kind, I_v(x), for real x > 0.
// Two independent routes: the ascending series for any order, and closed
// hyperbolic forms for half-integer orders.

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "errors.hpp"

namespace pentaverify {

/// 50-digit binary float without expression templates.
using Float50 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                              boost::multiprecision::et_off>;

/// sum_m (x/2)^{2m+v} / (m! Gamma(m+v+1)).
template <class Real>
Real bessel_i_series(Real order, Real x)
{
    using std::abs;
    using std::floor;
    using std::pow;
    if (!(x > 0)) throw DomainError("bessel_i: x must be positive");
    // Negative integer orders: 1/Gamma vanishes for the leading terms and
    // I_{-n} = I_n.
    if (order < 0 && floor(order) == order) order = -order;
    const Real half = x / 2;
    const Real half2 = half * half;
    Real term = pow(half, order) / boost::math::tgamma(order + 1);
    Real sum = term;
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int m = 1; m < 100000; ++m) {
        term *= half2 / (Real(m) * (Real(m) + order));
        sum += term;
        if (Real(m) > half && abs(term) <= eps * abs(sum) / 16) return sum;
    }
    throw NoConvergence("bessel_i_series did not converge");
}

/// I_{h/2}(x) for odd h, from I_{1/2} = sqrt(2/(pi x)) sinh x and
/// I_{-1/2} = sqrt(2/(pi x)) cosh x via I_{v-1} = I_{v+1} + (2v/x) I_v.
template <class Real>
Real bessel_i_half_integer(int twice_order, Real x)
{
    using std::cosh;
    using std::sinh;
    using std::sqrt;
    if (!(x > 0)) throw DomainError("bessel_i: x must be positive");
    if (twice_order % 2 == 0) throw DomainError("bessel_i_half_integer: order must be half-integer");
    const Real pi = boost::math::constants::pi<Real>();
    const Real pref = sqrt(2 / (pi * x));
    Real lo = pref * cosh(x);  // I_{-1/2}
    Real hi = pref * sinh(x);  // I_{1/2}
    if (twice_order == -1) return lo;
    if (twice_order == 1) return hi;
    if (twice_order > 0) {
        // Upward: I_{v+1} = I_{v-1} - (2v/x) I_v, with (lo, hi) = (I_{v-1}, I_v).
        for (int t = 1; t < twice_order; t += 2) {
            const Real v = Real(t) / 2;
            const Real next = lo - 2 * v / x * hi;
            lo = hi;
            hi = next;
        }
        return hi;
    }
    // Downward: I_{v-1} = I_{v+1} + (2v/x) I_v, with (hi, lo) = (I_{v+1}, I_v).
    for (int t = -1; t > twice_order; t -= 2) {
        const Real v = Real(t) / 2;
        const Real next = hi + 2 * v / x * lo;
        hi = lo;
        lo = next;
    }
    return lo;
}

/// Closed form for half-integer orders, ascending series otherwise.
template <class Real>
Real bessel_i(Real order, Real x)
{
    using std::floor;
    const Real twice = order * 2;
    if (floor(twice) == twice && floor(order) != order) {
        const int h = static_cast<int>(twice);
        if (h >= -15 && h <= 15) return bessel_i_half_integer<Real>(h, x);
    }
    return bessel_i_series<Real>(order, x);
}

inline double bessel_i(double order, double x) { return bessel_i<double>(order, x); }

}  // namespace pentaverify
