#pragma once

// Dense truncated formal power series in q over arbitrary-precision
// integers, with q-Pochhammer and Gaussian-binomial constructors and the
// generating-function identities built on them.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace pentaverify {

/// Coefficients of q^0..q^N. Arithmetic never touches degrees above N.
class CoeffSeries {
public:
    explicit CoeffSeries(std::size_t order = 0) : c_(order + 1) {}

    CoeffSeries(std::vector<BigInt> coeffs, std::size_t order) : c_(std::move(coeffs))
    {
        c_.resize(order + 1);
    }

    static CoeffSeries one(std::size_t order)
    {
        CoeffSeries s(order);
        s.c_[0] = 1;
        return s;
    }

    /// sign * q^exponent, or zero when the exponent is beyond the order.
    static CoeffSeries monomial(long sign, std::size_t exponent, std::size_t order)
    {
        CoeffSeries s(order);
        if (exponent <= order) s.c_[exponent] = sign;
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    const BigInt& operator[](std::size_t i) const { return c_[i]; }
    BigInt& operator[](std::size_t i) { return c_[i]; }

    /// Coefficient of q^i, zero past the order.
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

    bool is_zero() const
    {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    /// this *= (1 + c q^e), in place.
    CoeffSeries& mul_binomial(const BigInt& c, std::size_t e)
    {
        if (e == 0) {
            const BigInt f = 1 + c;
            for (auto& x : c_) x *= f;
            return *this;
        }
        for (std::size_t i = order(); i >= e; --i) {
            if (c_[i - e] != 0) c_[i] += c * c_[i - e];
            if (i == e) break;
        }
        return *this;
    }

    /// this /= (1 - q^e) for e >= 1, i.e. multiplication by the geometric
    /// series 1 + q^e + q^{2e} + ...
    CoeffSeries& div_one_minus(std::size_t e)
    {
        if (e == 0) throw NonUnitConstantTerm("division by 1 - q^0");
        for (std::size_t i = e; i <= order(); ++i) c_[i] += c_[i - e];
        return *this;
    }

    /// this *= q^s, dropping what falls past the order.
    CoeffSeries& shift(std::size_t s)
    {
        if (s == 0) return *this;
        for (std::size_t i = order() + 1; i-- > 0;) c_[i] = (i >= s) ? c_[i - s] : BigInt(0);
        return *this;
    }

    CoeffSeries& operator+=(const CoeffSeries& o)
    {
        check_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    CoeffSeries& operator-=(const CoeffSeries& o)
    {
        check_order(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    CoeffSeries& operator*=(const BigInt& s)
    {
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend CoeffSeries operator+(CoeffSeries a, const CoeffSeries& b) { return a += b; }
    friend CoeffSeries operator-(CoeffSeries a, const CoeffSeries& b) { return a -= b; }
    friend bool operator==(const CoeffSeries& a, const CoeffSeries& b) { return a.c_ == b.c_; }

    /// Same coefficients, cut (or zero-padded) to a new order.
    CoeffSeries truncated(std::size_t order) const
    {
        std::vector<BigInt> c(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(order + 1, c_.size())));
        return {std::move(c), order};
    }

private:
    void check_order(const CoeffSeries& o) const
    {
        if (o.order() != order())
            throw OrderMismatch("series orders differ: " + std::to_string(order()) + " vs " +
                                std::to_string(o.order()));
    }

    std::vector<BigInt> c_;
};

/// Schoolbook Cauchy product truncated at the common order.
inline CoeffSeries series_mul(const CoeffSeries& a, const CoeffSeries& b)
{
    if (a.order() != b.order())
        throw OrderMismatch("series_mul: orders " + std::to_string(a.order()) + " and " +
                            std::to_string(b.order()));
    const std::size_t n = a.order();
    CoeffSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j)
            if (b[j] != 0) r[i + j] += a[i] * b[j];
    }
    return r;
}

/// Multiplicative inverse for a series with constant term +1 or -1.
inline CoeffSeries series_inverse(const CoeffSeries& a)
{
    const BigInt& c0 = a[0];
    if (c0 != 1 && c0 != -1) throw NonUnitConstantTerm("series_inverse needs constant term +-1");
    const std::size_t n = a.order();
    CoeffSeries b(n);
    b[0] = c0;  // 1/(+-1) = +-1
    for (std::size_t m = 1; m <= n; ++m) {
        BigInt acc = 0;
        for (std::size_t i = 1; i <= m; ++i)
            if (a[i] != 0) acc += a[i] * b[m - i];
        b[m] = (c0 == 1) ? BigInt(-acc) : acc;
    }
    return b;
}

/// First exponent where two series differ.
inline std::optional<std::size_t> first_mismatch(const CoeffSeries& a, const CoeffSeries& b)
{
    const std::size_t n = std::max(a.order(), b.order());
    for (std::size_t i = 0; i <= n; ++i)
        if (a.coeff(i) != b.coeff(i)) return i;
    return std::nullopt;
}

/// CSV with header `exponent,coefficient`.
inline void write_csv(std::ostream& os, const CoeffSeries& s)
{
    os << "exponent,coefficient\n";
    for (std::size_t i = 0; i <= s.order(); ++i) os << i << ',' << s[i] << '\n';
}

// ---------------------------------------------------------------------------
// q-Pochhammer symbols and Gaussian binomials

enum class QBase : unsigned { Q = 1, Q2 = 2 };

/// The parameter A = sign * q^exponent of (A; base)_n.
struct Monomial {
    int sign = 1;
    std::size_t exponent = 0;
};

/// (A; q^b)_n = prod_{j<n} (1 - A q^{bj}); `count` empty means n = infinity,
/// in which case factors whose q-degree exceeds the order are skipped
/// (they are 1 to that order).
inline CoeffSeries pochhammer(Monomial a, std::optional<std::size_t> count, QBase base,
                              std::size_t order)
{
    const auto b = static_cast<std::size_t>(base);
    CoeffSeries s = CoeffSeries::one(order);
    const BigInt c = -a.sign;
    for (std::size_t j = 0; !count || j < *count; ++j) {
        const std::size_t e = a.exponent + b * j;
        if (e > order) break;
        s.mul_binomial(c, e);
    }
    return s;
}

/// s / (q^b; q^b)_n in place, n empty for infinity.
inline CoeffSeries& divide_by_q_pochhammer(CoeffSeries& s, std::optional<std::size_t> count,
                                          QBase base = QBase::Q)
{
    const auto b = static_cast<std::size_t>(base);
    for (std::size_t j = 1; !count || j <= *count; ++j) {
        if (b * j > s.order()) break;
        s.div_one_minus(b * j);
    }
    return s;
}

/// Plain polynomial with exact coefficients, lowest degree first.
using Poly = std::vector<BigInt>;

/// Long division num = den * quot with zero remainder, else InexactDivision.
inline Poly poly_divide_exact(Poly num, const Poly& den)
{
    if (!den.empty() && den.back() == 0) throw InexactDivision("denominator has trailing zero");
    if (den.empty()) throw InexactDivision("division by zero polynomial");
    while (!num.empty() && num.back() == 0) num.pop_back();
    if (num.empty()) return {};
    if (num.size() < den.size()) throw InexactDivision("numerator degree below denominator");
    const std::size_t dq = num.size() - den.size();
    Poly quot(dq + 1);
    const BigInt& lead = den.back();
    for (std::size_t i = dq + 1; i-- > 0;) {
        const BigInt& top = num[i + den.size() - 1];
        if (top % lead != 0) throw InexactDivision("non-integral quotient coefficient");
        quot[i] = top / lead;
        if (quot[i] == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= quot[i] * den[j];
    }
    for (const auto& r : num)
        if (r != 0) throw InexactDivision("nonzero remainder");
    return quot;
}

inline Poly poly_mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// (q^b; q^b)_n as an exact polynomial.
inline Poly q_pochhammer_poly(std::size_t n, QBase base = QBase::Q)
{
    const auto b = static_cast<std::size_t>(base);
    Poly p{1};
    for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t e = b * j;
        p.resize(p.size() + e);
        for (std::size_t i = p.size(); i-- > e;) p[i] -= p[i - e];
    }
    return p;
}

struct QBinomial {
    long top = 0;
    long bottom = 0;
    QBase base = QBase::Q;
    CoeffSeries value;
};

/// Gaussian binomial [top, bottom] in base q or q^2, truncated at `order`.
/// The full polynomial is formed as prod_{j=top-m+1}^{top} (1 - q^{bj})
/// divided exactly by each factor of (q^b; q^b)_m, m = min(bottom, top-bottom),
/// with every division checked for a zero remainder.
inline QBinomial q_binom(long top, long bottom, QBase base, std::size_t order)
{
    QBinomial r{top, bottom, base, CoeffSeries(order)};
    if (bottom < 0 || bottom > top) return r;
    const auto b = static_cast<std::size_t>(base);
    const auto m = static_cast<std::size_t>(std::min(bottom, top - bottom));
    const auto t = static_cast<std::size_t>(top);

    Poly p{1};
    for (std::size_t j = t - m + 1; j <= t; ++j) {
        const std::size_t e = b * j;
        p.resize(p.size() + e);
        for (std::size_t i = p.size(); i-- > e;) p[i] -= p[i - e];
    }
    for (std::size_t j = 1; j <= m; ++j) {
        // Synthetic division by (1 - q^e): quot[i] = p[i] + quot[i - e].
        const std::size_t e = b * j;
        if (p.size() <= e) throw InexactDivision("q_binom: degree underflow");
        const std::size_t dq = p.size() - 1 - e;
        Poly quot(dq + 1);
        for (std::size_t i = 0; i <= dq; ++i) quot[i] = p[i] + (i >= e ? quot[i - e] : BigInt(0));
        for (std::size_t i = dq + 1; i < p.size(); ++i) {
            const BigInt rem = p[i] + (i >= e && i - e <= dq ? quot[i - e] : BigInt(0));
            if (rem != 0) throw InexactDivision("q_binom: nonzero remainder");
        }
        p = std::move(quot);
    }
    r.value = CoeffSeries(std::move(p), order);
    return r;
}

// ---------------------------------------------------------------------------
// Generating functions of the truncated sums

/// (-1)^{k-1}/(q;q)_inf * sum_{j<k} (-1)^j q^{j(3j+1)/2} (1 - q^{2j+1}).
inline CoeffSeries mk_gf_closed(long k, std::size_t order)
{
    if (k < 1) throw DomainError("k must be positive");
    CoeffSeries s(order);
    for (long j = 0; j < k; ++j) {
        const long sign = (j % 2 == 0) ? 1 : -1;
        const auto e1 = static_cast<std::size_t>(j * (3 * j + 1) / 2);
        const auto e2 = e1 + static_cast<std::size_t>(2 * j + 1);
        if (e1 <= order) s[e1] += sign;
        if (e2 <= order) s[e2] -= sign;
    }
    divide_by_q_pochhammer(s, std::nullopt);
    if (k % 2 == 0) s *= BigInt(-1);
    return s;
}

/// (-1)^{k-1} + sum_{n>=k} q^{C(k,2)+(k+1)n} / (q;q)_n * [n-1, k-1]_q.
/// Terms with n < k vanish through the binomial.
inline CoeffSeries mk_gf_positive(long k, std::size_t order)
{
    if (k < 1) throw DomainError("k must be positive");
    CoeffSeries s = CoeffSeries::monomial((k % 2 == 1) ? 1 : -1, 0, order);
    for (long n = k;; ++n) {
        const auto lead = static_cast<std::size_t>(k * (k - 1) / 2 + (k + 1) * n);
        if (lead > order) break;
        const std::size_t rest = order - lead;
        CoeffSeries term = q_binom(n - 1, k - 1, QBase::Q, rest).value;
        if (term.is_zero()) continue;
        divide_by_q_pochhammer(term, static_cast<std::size_t>(n));
        for (std::size_t i = 0; i <= rest; ++i) s[lead + i] += term[i];
    }
    return s;
}

struct SeriesPair {
    CoeffSeries lhs;
    CoeffSeries rhs;
};

/// (-q;q)_inf/(q;q)_inf * sum_{|j|<=k} (-1)^j q^{j^2}
///   = 1 + (-1)^k sum_{n>=k+1} (-q;q)_k (-1;q)_{n-k} q^{(k+1)n} / (q;q)_n [n-1, k]_q.
inline SeriesPair guozeng_square_sides(long k, std::size_t order)
{
    if (k < 1) throw DomainError("k must be positive");
    CoeffSeries lhs(order);
    for (long j = -k; j <= k; ++j) {
        const auto e = static_cast<std::size_t>(j * j);
        if (e <= order) lhs[e] += (j % 2 == 0) ? 1 : -1;
    }
    for (std::size_t j = 1; j <= order; ++j) lhs.mul_binomial(1, j);
    divide_by_q_pochhammer(lhs, std::nullopt);

    CoeffSeries rhs = CoeffSeries::one(order);
    for (long n = k + 1;; ++n) {
        const auto lead = static_cast<std::size_t>((k + 1) * n);
        if (lead > order) break;
        const std::size_t rest = order - lead;
        CoeffSeries term = q_binom(n - 1, k, QBase::Q, rest).value;
        for (long j = 1; j <= k; ++j) term.mul_binomial(1, static_cast<std::size_t>(j));
        for (long j = 0; j < n - k; ++j) term.mul_binomial(1, static_cast<std::size_t>(j));
        divide_by_q_pochhammer(term, static_cast<std::size_t>(n));
        const long sign = (k % 2 == 0) ? 1 : -1;
        for (std::size_t i = 0; i <= rest; ++i) rhs[lead + i] += sign * term[i];
    }
    return {std::move(lhs), std::move(rhs)};
}

/// (-q;q^2)_inf/(q^2;q^2)_inf * sum_{j<k} (-1)^j q^{j(2j+1)} (1 - q^{2j+1})
///   = 1 + (-1)^{k-1} sum_{n>=k} (-q;q^2)_k (-q;q^2)_{n-k} q^{2(k+1)n-k}
///         / (q^2;q^2)_n [n-1, k-1]_{q^2}.
inline SeriesPair guozeng_pod_sides(long k, std::size_t order)
{
    if (k < 1) throw DomainError("k must be positive");
    CoeffSeries lhs(order);
    for (long j = 0; j < k; ++j) {
        const long sign = (j % 2 == 0) ? 1 : -1;
        const auto e1 = static_cast<std::size_t>(j * (2 * j + 1));
        const auto e2 = e1 + static_cast<std::size_t>(2 * j + 1);
        if (e1 <= order) lhs[e1] += sign;
        if (e2 <= order) lhs[e2] -= sign;
    }
    for (std::size_t j = 0; 2 * j + 1 <= order; ++j) lhs.mul_binomial(1, 2 * j + 1);
    divide_by_q_pochhammer(lhs, std::nullopt, QBase::Q2);

    CoeffSeries rhs = CoeffSeries::one(order);
    for (long n = k;; ++n) {
        const auto lead = static_cast<std::size_t>(2 * (k + 1) * n - k);
        if (lead > order) break;
        const std::size_t rest = order - lead;
        CoeffSeries term = q_binom(n - 1, k - 1, QBase::Q2, rest).value;
        for (long j = 0; j < k; ++j) term.mul_binomial(1, static_cast<std::size_t>(2 * j + 1));
        for (long j = 0; j < n - k; ++j) term.mul_binomial(1, static_cast<std::size_t>(2 * j + 1));
        divide_by_q_pochhammer(term, static_cast<std::size_t>(n), QBase::Q2);
        const long sign = (k % 2 == 1) ? 1 : -1;
        for (std::size_t i = 0; i <= rest; ++i) rhs[lead + i] += sign * term[i];
    }
    return {std::move(lhs), std::move(rhs)};
}

}  // namespace pentaverify
