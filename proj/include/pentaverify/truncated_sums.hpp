#pragma once

// Exact truncated alternating sums M_k(n), Mbar_k(n), MP_k(n) over the
// base sequence tables, and brute-force counters for their combinatorial
// interpretations.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "bigint.hpp"
#include "errors.hpp"
#include "partition_core.hpp"

namespace pentaverify {

enum class SumFamily { Mk, MkBar, MPk };

inline std::string_view sum_family_name(SumFamily f)
{
    switch (f) {
    case SumFamily::Mk: return "mk";
    case SumFamily::MkBar: return "mkbar";
    case SumFamily::MPk: return "mp";
    }
    return "?";
}

inline std::optional<SumFamily> parse_sum_family(std::string_view s)
{
    if (s == "mk") return SumFamily::Mk;
    if (s == "mkbar") return SumFamily::MkBar;
    if (s == "mp" || s == "mpk") return SumFamily::MPk;
    return std::nullopt;
}

/// The base sequence each truncated sum is built from.
constexpr Family base_family(SumFamily f)
{
    switch (f) {
    case SumFamily::Mk: return Family::P;
    case SumFamily::MkBar: return Family::OverP;
    case SumFamily::MPk: return Family::Pod;
    }
    return Family::P;
}

struct TruncatedSumQuery {
    SumFamily family = SumFamily::Mk;
    long n = 0;
    long k = 1;
};

namespace detail {

inline void check_query(long n, long k, const SeqTable& t, Family expected)
{
    if (k < 1) throw DomainError("k must be positive");
    if (n < 0) throw DomainError("n must be nonnegative");
    if (t.family() != expected)
        throw DomainError("table family " + std::string(family_name(t.family())) +
                          " does not match " + std::string(family_name(expected)));
    if (!t.covers(n))
        throw TableTooSmall("n = " + std::to_string(n) + " beyond table max " +
                            std::to_string(t.max_n()));
}

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace detail

/// M_k(n) = (-1)^{k-1} sum_{j<k} (-1)^j [p(n - j(3j+1)/2) - p(n - j(3j+5)/2 - 1)].
inline BigInt mk(long n, long k, const SeqTable& p)
{
    detail::check_query(n, k, p, Family::P);
    BigInt s = 0;
    for (long j = 0; j < k; ++j) {
        const long a = n - j * (3 * j + 1) / 2;
        if (a < 0) break;  // the second argument is smaller still
        const long b = n - j * (3 * j + 5) / 2 - 1;
        BigInt term = p[a] - p[b];
        if (j % 2 == 0)
            s += term;
        else
            s -= term;
    }
    return detail::sign_pow(k - 1) == 1 ? s : BigInt(-s);
}

/// Mbar_k(n) = (-1)^k sum_{|j|<=k} (-1)^j pbar(n - j^2).
inline BigInt mkbar(long n, long k, const SeqTable& overp)
{
    detail::check_query(n, k, overp, Family::OverP);
    BigInt s = overp[n];
    for (long j = 1; j <= k; ++j) {
        const long a = n - j * j;
        if (a < 0) break;
        if (j % 2 == 0)
            s += 2 * overp[a];
        else
            s -= 2 * overp[a];
    }
    return detail::sign_pow(k) == 1 ? s : BigInt(-s);
}

/// MP_k(n) = (-1)^{k-1} sum_{j<k} (-1)^j [pod(n - j(2j+1)) - pod(n - (j+1)(2j+1))].
inline BigInt mp(long n, long k, const SeqTable& pod)
{
    detail::check_query(n, k, pod, Family::Pod);
    BigInt s = 0;
    for (long j = 0; j < k; ++j) {
        const long a = n - j * (2 * j + 1);
        if (a < 0) break;
        const long b = n - (j + 1) * (2 * j + 1);
        BigInt term = pod[a] - pod[b];
        if (j % 2 == 0)
            s += term;
        else
            s -= term;
    }
    return detail::sign_pow(k - 1) == 1 ? s : BigInt(-s);
}

inline BigInt evaluate(const TruncatedSumQuery& q, const SeqTable& base)
{
    switch (q.family) {
    case SumFamily::Mk: return mk(q.n, q.k, base);
    case SumFamily::MkBar: return mkbar(q.n, q.k, base);
    case SumFamily::MPk: return mp(q.n, q.k, base);
    }
    throw DomainError("unknown family");
}

// ---------------------------------------------------------------------------
// Interpretation predicates. Each takes a partition in nonincreasing order.

/// k is the least positive integer that is not a part, and there are more
/// parts > k than parts < k.
inline bool mk_admissible(const Partition& p, long k)
{
    for (long m = 1; m < k; ++m)
        if (p.multiplicity(static_cast<int>(m)) == 0) return false;
    if (p.multiplicity(static_cast<int>(k)) != 0) return false;
    long above = 0, below = 0;
    for (int part : p.parts) {
        if (part > k) ++above;
        if (part < k) ++below;
    }
    return above > below;
}

/// The smallest part exceeding k occurs at least k + 1 times (overlined or
/// not). Overline flags play no role, so every overlining of a qualifying
/// partition counts.
inline bool mkbar_admissible(const Partition& p, long k)
{
    for (auto it = p.parts.rbegin(); it != p.parts.rend(); ++it)
        if (*it > k) return p.multiplicity(*it) >= k + 1;
    return false;
}

/// The smallest part exceeding 2k - 1 is odd and occurs exactly k times;
/// every other odd part occurs at most once.
inline bool mp_admissible(const Partition& p, long k)
{
    int first = 0;
    for (auto it = p.parts.rbegin(); it != p.parts.rend(); ++it)
        if (*it > 2 * k - 1) {
            first = *it;
            break;
        }
    if (first == 0 || first % 2 == 0) return false;
    if (p.multiplicity(first) != k) return false;
    for (int d : p.distinct_parts())
        if (d != first && d % 2 == 1 && p.multiplicity(d) > 1) return false;
    return true;
}

namespace detail {

template <class Pred>
long count_partitions(long n, PartitionMode mode, Pred pred)
{
    if (n < 0) throw DomainError("n must be nonnegative");
    if (n > enumeration_cap(mode))
        throw CapExceeded("n = " + std::to_string(n) + " above enumeration cap " +
                          std::to_string(enumeration_cap(mode)));
    long c = 0;
    for_each_partition(static_cast<int>(n), mode, [&](const Partition& p) { c += pred(p); });
    return c;
}

}  // namespace detail

inline long mk_oracle(long n, long k)
{
    if (k < 1) throw DomainError("k must be positive");
    return detail::count_partitions(n, PartitionMode::Plain,
                                    [k](const Partition& p) { return mk_admissible(p, k); });
}

inline long mkbar_oracle(long n, long k)
{
    if (k < 1) throw DomainError("k must be positive");
    return detail::count_partitions(n, PartitionMode::Over,
                                    [k](const Partition& p) { return mkbar_admissible(p, k); });
}

/// The empty partition has no part above 2k - 1, so n = 0 counts zero.
inline long mp_oracle(long n, long k)
{
    if (k < 1) throw DomainError("k must be positive");
    // Plain enumeration: the predicate itself rules out repeated odd parts
    // other than the distinguished one.
    if (n > enumeration_cap(PartitionMode::PodOnly))
        throw CapExceeded("n = " + std::to_string(n) + " above enumeration cap " +
                          std::to_string(enumeration_cap(PartitionMode::PodOnly)));
    long c = 0;
    PartitionStream s(static_cast<int>(n), PartitionMode::Plain,
                      enumeration_cap(PartitionMode::PodOnly));
    while (auto p = s.next()) c += mp_admissible(*p, k);
    return c;
}

inline long oracle(SumFamily f, long n, long k)
{
    switch (f) {
    case SumFamily::Mk: return mk_oracle(n, k);
    case SumFamily::MkBar: return mkbar_oracle(n, k);
    case SumFamily::MPk: return mp_oracle(n, k);
    }
    throw DomainError("unknown family");
}

/// Enumeration cap that applies to a family's oracle.
constexpr int oracle_cap(SumFamily f)
{
    switch (f) {
    case SumFamily::Mk: return enumeration_cap(PartitionMode::Plain);
    case SumFamily::MkBar: return enumeration_cap(PartitionMode::Over);
    case SumFamily::MPk: return enumeration_cap(PartitionMode::PodOnly);
    }
    return 0;
}

/// CSV grid with header `family,n,k,value`.
inline void write_grid_csv(std::ostream& os, SumFamily f, const SeqTable& base, long n_max,
                           long k_max)
{
    os << "family,n,k,value\n";
    for (long n = 0; n <= n_max; ++n)
        for (long k = 1; k <= k_max; ++k)
            os << sum_family_name(f) << ',' << n << ',' << k << ','
               << evaluate({f, n, k}, base) << '\n';
}

}  // namespace pentaverify
