#pragma once

// Asymptotic main terms for M_k(n), Mbar_k(n), MP_k(n) and the ratio
// tables that compare them against exact values in log space.

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "bigint.hpp"
#include "errors.hpp"
#include "partition_core.hpp"
#include "truncated_sums.hpp"

namespace pentaverify {

namespace detail {
inline constexpr double pi = boost::math::constants::pi<double>();

inline void check_main_args(long n, long k)
{
    if (n < 1) throw DomainError("main term needs n >= 1");
    if (k < 1) throw DomainError("main term needs k >= 1");
}
}  // namespace detail

/// ln[(pi / (12 sqrt 2)) k n^{-3/2} exp(2 pi sqrt(n/6))].
inline LogMagnitude main_term_mk(long n, long k)
{
    detail::check_main_args(n, k);
    const double nd = static_cast<double>(n);
    return LogMagnitude::positive(std::log(detail::pi / (12 * std::sqrt(2.0))) +
                                  std::log(static_cast<double>(k)) - 1.5 * std::log(nd) +
                                  2 * detail::pi * std::sqrt(nd / 6));
}

/// ln[(1/8) n^{-1} exp(pi sqrt n)]; independent of k.
inline LogMagnitude main_term_mkbar(long n, long k)
{
    detail::check_main_args(n, k);
    const double nd = static_cast<double>(n);
    return LogMagnitude::positive(std::log(1.0 / 8) - std::log(nd) + detail::pi * std::sqrt(nd));
}

/// ln[(pi/16) k n^{-3/2} exp(pi sqrt(n/2))].
inline LogMagnitude main_term_mp(long n, long k)
{
    detail::check_main_args(n, k);
    const double nd = static_cast<double>(n);
    return LogMagnitude::positive(std::log(detail::pi / 16) + std::log(static_cast<double>(k)) -
                                  1.5 * std::log(nd) + detail::pi * std::sqrt(nd / 2));
}

inline LogMagnitude main_term(SumFamily f, long n, long k)
{
    switch (f) {
    case SumFamily::Mk: return main_term_mk(n, k);
    case SumFamily::MkBar: return main_term_mkbar(n, k);
    case SumFamily::MPk: return main_term_mp(n, k);
    }
    throw DomainError("unknown family");
}

/// Hardy-Ramanujan: ln[(1/(4 sqrt 3)) n^{-1} exp(2 pi sqrt(n/6))].
inline LogMagnitude hardy_ramanujan_p(long n)
{
    if (n < 1) throw DomainError("hardy_ramanujan_p needs n >= 1");
    const double nd = static_cast<double>(n);
    return LogMagnitude::positive(-std::log(4 * std::sqrt(3.0)) - std::log(nd) +
                                  2 * detail::pi * std::sqrt(nd / 6));
}

/// Constant-free stand-in for k << n^{1/8 - eps} (k^8 <= n), or
/// k << n^{1/12 - eps} (k^12 <= n) for the overpartition family.
inline bool regime_check(SumFamily f, long n, long k)
{
    if (k < 1 || n < 1) return false;
    const int power = (f == SumFamily::MkBar) ? 12 : 8;
    long double acc = 1;
    for (int i = 0; i < power; ++i) acc *= static_cast<long double>(k);
    return acc <= static_cast<long double>(n);
}

struct RatioReport {
    SumFamily family = SumFamily::Mk;
    long n = 0;
    long k = 0;
    LogMagnitude exact;
    double ln_main = 0;
    double rel_dev = std::numeric_limits<double>::quiet_NaN();  // NaN when exact <= 0
    bool in_regime = false;

    bool defined() const { return exact.sign > 0; }
};

/// exact / main - 1 from the two logarithms.
inline RatioReport ratio_row(SumFamily f, long n, long k, const SeqTable& base)
{
    RatioReport r;
    r.family = f;
    r.n = n;
    r.k = k;
    r.exact = log_magnitude(evaluate({f, n, k}, base));
    r.ln_main = main_term(f, n, k).ln_abs;
    if (r.exact.sign > 0) r.rel_dev = std::expm1(r.exact.ln_abs - r.ln_main);
    r.in_regime = regime_check(f, n, k);
    return r;
}

/// Rows in input order: every n for the first k, then the next k.
inline std::vector<RatioReport> ratio_table(SumFamily f, std::span<const long> n_list,
                                            std::span<const long> k_list, const SeqTable& base)
{
    if (base.family() != base_family(f))
        throw DomainError("ratio_table: table family does not match");
    for (long n : n_list)
        if (!base.covers(n))
            throw TableTooSmall("ratio_table: n = " + std::to_string(n) + " beyond table max " +
                                std::to_string(base.max_n()));
    std::vector<RatioReport> rows;
    rows.reserve(n_list.size() * k_list.size());
    for (long k : k_list)
        for (long n : n_list) rows.push_back(ratio_row(f, n, k, base));
    return rows;
}

/// |rel_dev| strictly decreasing along consecutive rows of equal k.
inline bool ratio_converges(const std::vector<RatioReport>& rows)
{
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].k != rows[i - 1].k) continue;
        if (!rows[i].defined() || !rows[i - 1].defined()) return false;
        if (!(std::abs(rows[i].rel_dev) < std::abs(rows[i - 1].rel_dev))) return false;
    }
    return true;
}

/// 17 significant digits, `nan` for undefined values.
inline std::string format_real(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_ratio_csv(std::ostream& os, const std::vector<RatioReport>& rows)
{
    os << "family,n,k,ln_exact,ln_main,rel_dev,in_regime\n";
    for (const auto& r : rows)
        os << sum_family_name(r.family) << ',' << r.n << ',' << r.k << ','
           << format_real(r.exact.ln_abs) << ',' << format_real(r.ln_main) << ','
           << format_real(r.rel_dev) << ',' << (r.in_regime ? "true" : "false") << '\n';
}

}  // namespace pentaverify
