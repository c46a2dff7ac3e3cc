#pragma once

// Composite Gauss-Legendre quadrature with panel doubling. Templated on
// the real type so the Wright-integral checks can run in extended
// precision.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "errors.hpp"

namespace pentaverify {

template <class Real>
struct GaussLegendreRule {
    std::vector<Real> nodes;    // on [-1, 1]
    std::vector<Real> weights;
};

/// n-point rule by Newton iteration on P_n from the Chebyshev-like guess.
template <class Real>
GaussLegendreRule<Real> gauss_legendre(int n)
{
    using std::abs;
    using std::cos;
    const Real pi = boost::math::constants::pi<Real>();
    const Real eps = std::numeric_limits<Real>::epsilon();
    GaussLegendreRule<Real> r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        Real z = cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real dp = 0;
        for (int it = 0; it < 100; ++it) {
            Real p1 = 1, p2 = 0;
            for (int j = 1; j <= n; ++j) {
                const Real p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) * z * p2 - (j - 1) * p3) / j;
            }
            dp = n * (z * p1 - p2) / (z * z - 1);
            const Real dz = p1 / dp;
            z -= dz;
            if (abs(dz) <= 4 * eps) break;
        }
        // Recompute the derivative at the converged root.
        Real p1 = 1, p2 = 0;
        for (int j = 1; j <= n; ++j) {
            const Real p3 = p2;
            p2 = p1;
            p1 = ((2 * j - 1) * z * p2 - (j - 1) * p3) / j;
        }
        dp = n * (z * p1 - p2) / (z * z - 1);
        const Real w = 2 / ((1 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        r.nodes[lo] = -z;
        r.nodes[hi] = z;
        r.weights[lo] = w;
        r.weights[hi] = w;
    }
    return r;
}

template <class Real>
struct QuadratureOptions {
    Real tol = Real(1e-10);          // relative change between doublings
    std::size_t max_nodes = std::size_t{1} << 20;
    int rule_points = 20;
    std::size_t initial_panels = 4;
};

template <class Value, class Real>
struct QuadratureResult {
    Value value{};
    Real l1 = 0;                     // estimate of the integral of |f|
    Real last_change = 0;
    std::size_t nodes = 0;
};

namespace detail {

// Unqualified so value types can supply abs() by argument-dependent lookup.
template <class Value>
auto magnitude(const Value& v)
{
    using std::abs;
    return abs(v);
}

}  // namespace detail

/// Integrates f over [a, b], doubling the number of equal panels until two
/// successive estimates differ by at most tol times the integral of |f|.
/// Measuring against the integral of |f| keeps the criterion meaningful
/// when the integral itself cancels to nearly zero.
template <class Real, class F>
auto integrate(F&& f, Real a, Real b, const QuadratureOptions<Real>& opt = {})
    -> QuadratureResult<decltype(f(a)), Real>
{
    using Value = decltype(f(a));
    const auto rule = gauss_legendre<Real>(opt.rule_points);
    QuadratureResult<Value, Real> res;
    bool have_prev = false;
    for (std::size_t panels = opt.initial_panels;; panels *= 2) {
        const std::size_t nodes = panels * static_cast<std::size_t>(opt.rule_points);
        if (nodes > opt.max_nodes)
            throw NoConvergence("quadrature did not converge within " +
                                std::to_string(opt.max_nodes) + " nodes");
        const Real h = (b - a) / Real(panels);
        Value sum{};
        Real l1 = 0;
        for (std::size_t p = 0; p < panels; ++p) {
            const Real mid = a + h * (Real(p) + Real(0.5));
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const Value v = f(mid + h / 2 * rule.nodes[i]);
                const Real w = rule.weights[i] * h / 2;
                sum += v * w;
                l1 += detail::magnitude(v) * w;
            }
        }
        if (have_prev) {
            const Real change = detail::magnitude(Value(sum - res.value));
            res.value = sum;
            res.l1 = l1;
            res.nodes = nodes;
            res.last_change = change;
            if (change <= opt.tol * l1) return res;
        } else {
            res.value = sum;
            res.l1 = l1;
            res.nodes = nodes;
            have_prev = true;
        }
    }
}

}  // namespace pentaverify
