#pragma once

// Numerical side of Wright's circle method for the generating function
//   M_k(q) = (-1)^{k-1} / (q;q)_inf * sum_{j<k} (-1)^j q^{j(3j+1)/2} (1 - q^{2j+1}):
// evaluation on |q| < 1, the major- and minor-arc estimates, the eta
// inversion, Wright's P_s(u), and the Cauchy-integral reconstruction of
// M_k(n).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "asymptotics.hpp"
#include "bessel.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace pentaverify {

using Complex = std::complex<double>;

inline constexpr double default_prod_tol = 1e-18;

/// tau = x + iy in the upper half plane; q = exp(2 pi i tau).
struct ComplexTau {
    double x = 0;
    double y = 1;

    Complex tau() const { return {x, y}; }
    Complex q() const { return std::polar(std::exp(-2 * detail::pi * y), 2 * detail::pi * x); }
};

/// M = sqrt((12 / (12 - pi^2))^2 - 1), the arc half-width in units of y.
inline double arc_constant()
{
    const double r = 12 / (12 - detail::pi * detail::pi);
    return std::sqrt(r * r - 1);
}

/// Height of the integration circle, y = 1 / (2 sqrt(6n)).
inline double circle_height(long n)
{
    return 1 / (2 * std::sqrt(6.0 * static_cast<double>(n)));
}

struct ContourSpec {
    long n = 1;
    long k = 1;
    double y = 0;
    double M = 0;
    std::size_t major_pts = 257;   // lemma sampling on |x| <= My
    std::size_t minor_pts = 512;   // per side on My < |x| <= 1/2
    double tol = 1e-12;            // quadrature relative change
    std::size_t max_nodes = std::size_t{1} << 20;
    double prod_tol = default_prod_tol;

    static ContourSpec make(long n, long k)
    {
        if (n < 1) throw DomainError("contour needs n >= 1");
        if (k < 1) throw DomainError("contour needs k >= 1");
        ContourSpec c;
        c.n = n;
        c.k = k;
        c.y = circle_height(n);
        c.M = arc_constant();
        return c;
    }

    double major_half_width() const { return std::min(M * y, 0.5); }
};

/// (q;q)_inf, dropping factors once |q|^m < prod_tol.
inline Complex euler_product(const ComplexTau& t, double prod_tol = default_prod_tol)
{
    if (!(t.y > 0)) throw DomainError("euler_product needs Im tau > 0");
    const Complex q = t.q();
    const double r = std::abs(q);
    Complex qm = q;
    double rm = r;
    Complex prod = 1;
    for (long m = 1; rm >= prod_tol; ++m) {
        prod *= 1.0 - qm;
        qm *= q;
        rm *= r;
        if (m > 100000000) throw NoConvergence("euler_product: |q| too close to 1");
    }
    return prod;
}

/// sum_{j<k} (-1)^j q^{j(3j+1)/2} (1 - q^{2j+1}).
inline Complex mgf_numerator(const ComplexTau& t, long k)
{
    const Complex tau = t.tau();
    Complex s = 0;
    for (long j = 0; j < k; ++j) {
        const double e1 = static_cast<double>(j * (3 * j + 1) / 2);
        const double e2 = static_cast<double>(2 * j + 1);
        const Complex term = std::exp(Complex(0, 2 * detail::pi) * tau * e1) *
                             (1.0 - std::exp(Complex(0, 2 * detail::pi) * tau * e2));
        s += (j % 2 == 0) ? term : -term;
    }
    return s;
}

/// The generating function of M_k(n) at q = exp(2 pi i tau).
inline Complex mgf_eval(const ComplexTau& t, long k, double prod_tol = default_prod_tol)
{
    if (k < 1) throw DomainError("mgf_eval needs k >= 1");
    const Complex v = mgf_numerator(t, k) / euler_product(t, prod_tol);
    return (k % 2 == 1) ? v : -v;
}

/// -2 e^{pi i/4} pi k tau^{3/2} e^{pi i / (12 tau)}, principal branch.
inline Complex near1_approximation(const ComplexTau& t, long k)
{
    const Complex tau = t.tau();
    const Complex i(0, 1);
    return -2.0 * std::exp(i * (detail::pi / 4)) * detail::pi * static_cast<double>(k) *
           std::pow(tau, 1.5) * std::exp(i * detail::pi / (12.0 * tau));
}

struct EtaInversionReport {
    ComplexTau tau;
    Complex product;          // (q;q)_inf computed directly
    Complex leading;          // (-i tau)^{-1/2} exp(-pi i tau/12 - pi i/(12 tau))
    Complex dual_product;     // (q';q')_inf at q' = exp(-2 pi i / tau)
    double leading_defect = 0;  // |product / leading - 1|
    double bound = 0;           // 10 exp(-2 pi Im(-1/tau))
    double exact_defect = 0;    // |product / (leading * dual_product) - 1|

    // The bound drops below double resolution once Im(-1/tau) >~ 6, so a
    // roundoff floor is allowed.
    bool within_bound() const { return leading_defect <= std::max(bound, 1e-13); }
};

/// Compares (q;q)_inf with its modular inversion. The leading term alone
/// is accurate to a relative 1 + O(exp(-2 pi Im(-1/tau))); multiplying by
/// the dual product makes the transformation exact.
inline EtaInversionReport eta_inversion_check(const ComplexTau& t,
                                              double prod_tol = default_prod_tol)
{
    const Complex tau = t.tau();
    const Complex i(0, 1);
    EtaInversionReport r;
    r.tau = t;
    r.product = euler_product(t, prod_tol);
    r.leading = std::exp(-i * detail::pi * tau / 12.0 - i * detail::pi / (12.0 * tau)) /
                std::sqrt(-i * tau);
    const Complex dual = -1.0 / tau;
    r.dual_product = euler_product({dual.real(), dual.imag()}, prod_tol);
    r.leading_defect = std::abs(r.product / r.leading - 1.0);
    r.bound = 10 * std::exp(-2 * detail::pi * dual.imag());
    r.exact_defect = std::abs(r.product / (r.leading * r.dual_product) - 1.0);
    return r;
}

struct LemmaReport {
    long n = 0;
    long k = 0;
    double normalized_defect = 0;
    double worst_x = 0;
    std::size_t samples = 0;
    double max_numerator_ratio = 0;  // max |numerator| / (2k), minor arc only
};

namespace detail {
inline void require_regime(long n, long k, bool force)
{
    if (!force && !regime_check(SumFamily::Mk, n, k))
        throw RegimeViolation("k = " + std::to_string(k) + " outside regime for n = " +
                              std::to_string(n) + " (needs k^8 <= n)");
}
}  // namespace detail

/// max over |x| <= My of |M_k(q) - approximation| * exp(-pi sqrt(n/6)) n^{5/4} / k^3.
inline LemmaReport lemma_near1_check(const ContourSpec& c, bool force = false)
{
    detail::require_regime(c.n, c.k, force);
    const double nd = static_cast<double>(c.n);
    const double kd = static_cast<double>(c.k);
    const double scale = std::exp(-detail::pi * std::sqrt(nd / 6)) * std::pow(nd, 1.25) / (kd * kd * kd);
    const double half = c.major_half_width();
    LemmaReport r{c.n, c.k, 0, 0, c.major_pts, 0};
    for (std::size_t i = 0; i < c.major_pts; ++i) {
        const double x = c.major_pts == 1
                             ? 0.0
                             : -half + 2 * half * static_cast<double>(i) /
                                           static_cast<double>(c.major_pts - 1);
        const ComplexTau t{x, c.y};
        const double d = std::abs(mgf_eval(t, c.k, c.prod_tol) - near1_approximation(t, c.k)) * scale;
        if (d > r.normalized_defect) {
            r.normalized_defect = d;
            r.worst_x = x;
        }
    }
    return r;
}

inline LemmaReport lemma_near1_check(long n, long k, bool force = false)
{
    return lemma_near1_check(ContourSpec::make(n, k), force);
}

/// max over My < |x| <= 1/2 of |M_k(q)| n^{1/4} exp(-pi sqrt n / (2 sqrt 6)) / k,
/// on minor_pts evenly spaced points per side (the right end included).
inline LemmaReport lemma_away1_check(const ContourSpec& c, bool force = false)
{
    detail::require_regime(c.n, c.k, force);
    const double nd = static_cast<double>(c.n);
    const double kd = static_cast<double>(c.k);
    const double scale = std::pow(nd, 0.25) * std::exp(-detail::pi * std::sqrt(nd) / (2 * std::sqrt(6.0))) / kd;
    const double lo = c.M * c.y;
    LemmaReport r{c.n, c.k, 0, 0, 0, 0};
    if (lo >= 0.5) return r;
    for (int side : {1, -1}) {
        for (std::size_t i = 1; i <= c.minor_pts; ++i) {
            const double x = side * (lo + (0.5 - lo) * static_cast<double>(i) /
                                              static_cast<double>(c.minor_pts));
            const ComplexTau t{x, c.y};
            const double d = std::abs(mgf_eval(t, c.k, c.prod_tol)) * scale;
            const double num = std::abs(mgf_numerator(t, c.k)) / (2 * kd);
            r.max_numerator_ratio = std::max(r.max_numerator_ratio, num);
            ++r.samples;
            if (d > r.normalized_defect) {
                r.normalized_defect = d;
                r.worst_x = x;
            }
        }
    }
    return r;
}

inline LemmaReport lemma_away1_check(long n, long k, bool force = false)
{
    return lemma_away1_check(ContourSpec::make(n, k), force);
}

// ---------------------------------------------------------------------------
// Cauchy-integral reconstruction

inline constexpr long circle_max_n = 80;

struct CircleResult {
    long n = 0;
    long k = 0;
    Complex major;   // integral over |x| <= My
    Complex minor;   // integral over My < |x| <= 1/2
    double value = 0;
    double imag_residual = 0;
    long long rounded = 0;
    std::size_t nodes = 0;
};

/// M_k(n) = integral over x in [-1/2, 1/2] of M_k(e^{2 pi i tau}) e^{-2 n pi i tau},
/// tau = x + iy, split at |x| = My.
inline CircleResult circle_method_mk(const ContourSpec& c)
{
    if (c.n < 1 || c.n > circle_max_n)
        throw DomainError("circle_method_mk supports 1 <= n <= " + std::to_string(circle_max_n));
    const double ny = static_cast<double>(c.n);
    auto integrand = [&](double x) {
        const ComplexTau t{x, c.y};
        return mgf_eval(t, c.k, c.prod_tol) *
               std::polar(std::exp(2 * detail::pi * ny * c.y), -2 * detail::pi * ny * x);
    };
    QuadratureOptions<double> opt;
    opt.tol = c.tol;
    opt.max_nodes = c.max_nodes;
    const double a = c.major_half_width();

    CircleResult r;
    r.n = c.n;
    r.k = c.k;
    const auto major = integrate(integrand, -a, a, opt);
    r.major = major.value;
    r.nodes = major.nodes;
    if (a < 0.5) {
        const auto right = integrate(integrand, a, 0.5, opt);
        const auto left = integrate(integrand, -0.5, -a, opt);
        r.minor = right.value + left.value;
        r.nodes += right.nodes + left.nodes;
    }
    const Complex total = r.major + r.minor;
    r.value = total.real();
    r.imag_residual = total.imag();
    r.rounded = std::llround(r.value);
    return r;
}

inline CircleResult circle_method_mk(long n, long k)
{
    return circle_method_mk(ContourSpec::make(n, k));
}

// ---------------------------------------------------------------------------
// Wright's P_s(u)

/// Minimal complex pair usable with any real type, including Float50.
template <class Real>
struct ComplexPair {
    Real re = 0;
    Real im = 0;

    ComplexPair& operator+=(const ComplexPair& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    friend ComplexPair operator-(const ComplexPair& a, const ComplexPair& b)
    {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexPair operator*(const ComplexPair& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Real abs(const ComplexPair& a)
    {
        using std::sqrt;
        return sqrt(a.re * a.re + a.im * a.im);
    }
};

template <class Real>
struct WrightResult {
    Real re = 0;
    Real im = 0;   // vanishes by conjugate symmetry, kept as a diagnostic
    std::size_t nodes = 0;
};

/// P_s(u) = (1 / 2 pi i) int_{1-Mi}^{1+Mi} v^s e^{u(v + 1/v)} dv, by
/// quadrature in t along v = 1 + it.
template <class Real>
WrightResult<Real> wright_p(Real s, Real u, Real M, Real tol)
{
    using std::atan;
    using std::cos;
    using std::exp;
    using std::pow;
    using std::sin;
    if (!(u > 0)) throw DomainError("wright_p needs u > 0");
    if (!(M > 0)) throw DomainError("wright_p needs M > 0");
    const Real pi = boost::math::constants::pi<Real>();
    auto f = [&](const Real& t) {
        const Real r2 = 1 + t * t;
        const Real mag = pow(r2, s / 2) * exp(u * (1 + 1 / r2));
        const Real phase = s * atan(t) + u * t * t * t / r2;
        return ComplexPair<Real>{mag * cos(phase), mag * sin(phase)};
    };
    QuadratureOptions<Real> opt;
    opt.tol = tol;
    opt.rule_points = 32;
    opt.initial_panels = 8;
    const auto q = integrate(f, -M, M, opt);
    return {q.value.re / (2 * pi), q.value.im / (2 * pi), q.nodes};
}

inline WrightResult<double> wright_p(double s, double u, double M = arc_constant(), double tol = 1e-10)
{
    return wright_p<double>(s, u, M, tol);
}

}  // namespace pentaverify
