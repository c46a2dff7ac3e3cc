#pragma once

// Exact partition counting sequences p(n), overpartitions pbar(n) and
// pod(n), plus brute-force enumerators used as independent oracles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace pentaverify {

enum class Family { P, OverP, Pod };

inline std::string_view family_name(Family f)
{
    switch (f) {
    case Family::P: return "p";
    case Family::OverP: return "overp";
    case Family::Pod: return "pod";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view s)
{
    if (s == "p") return Family::P;
    if (s == "overp") return Family::OverP;
    if (s == "pod") return Family::Pod;
    return std::nullopt;
}

/// Immutable exact sequence values for indices 0..max_n. Negative indices
/// read as zero, which is what every truncated sum assumes.
class SeqTable {
public:
    SeqTable(Family family, std::vector<BigInt> values)
        : family_(family), values_(std::move(values))
    {
    }

    Family family() const { return family_; }
    long max_n() const { return static_cast<long>(values_.size()) - 1; }
    const std::vector<BigInt>& values() const { return values_; }

    bool covers(long n) const { return n <= max_n(); }

    const BigInt& value(long n) const
    {
        static const BigInt zero = 0;
        if (n < 0) return zero;
        if (n > max_n())
            throw TableTooSmall("index " + std::to_string(n) + " beyond table of " +
                                std::string(family_name(family_)) + " (max " +
                                std::to_string(max_n()) + ")");
        return values_[static_cast<std::size_t>(n)];
    }
    const BigInt& operator[](long n) const { return value(n); }

private:
    Family family_;
    std::vector<BigInt> values_;
};

namespace detail {

// Generic sparse-recurrence driver: a(n) = sum over (offset, weight) of
// weight * a(n - offset), with a(0) = 1. Offsets must be sorted ascending.
inline std::vector<BigInt> solve_theta_recurrence(long max_n,
                                                  const std::vector<std::pair<long, int>>& terms)
{
    std::vector<BigInt> a(static_cast<std::size_t>(max_n) + 1);
    a[0] = 1;
    for (long n = 1; n <= max_n; ++n) {
        BigInt acc = 0;
        for (const auto& [off, w] : terms) {
            if (off > n) break;
            const auto& prev = a[static_cast<std::size_t>(n - off)];
            if (w == 1)
                acc += prev;
            else if (w == -1)
                acc -= prev;
            else
                acc += w * prev;
        }
        a[static_cast<std::size_t>(n)] = std::move(acc);
    }
    return a;
}

}  // namespace detail

/// p(0..max_n) from Euler's pentagonal recurrence,
/// p(n) = sum_{j>=1} (-1)^{j-1} [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)].
inline SeqTable build_p_table(long max_n)
{
    if (max_n < 0) throw DomainError("max_n must be nonnegative");
    std::vector<std::pair<long, int>> terms;
    for (long j = 1;; ++j) {
        const long g1 = j * (3 * j - 1) / 2;
        if (g1 > max_n) break;
        const int w = (j % 2 == 1) ? 1 : -1;
        terms.emplace_back(g1, w);
        const long g2 = j * (3 * j + 1) / 2;
        if (g2 <= max_n) terms.emplace_back(g2, w);
    }
    return {Family::P, detail::solve_theta_recurrence(max_n, terms)};
}

/// Overpartitions. Uses (q;q)_inf / (-q;q)_inf = sum_j (-1)^j q^{j^2}, so
/// pbar(n) = 2 sum_{j>=1} (-1)^{j+1} pbar(n - j^2).
inline SeqTable build_overp_table(long max_n)
{
    if (max_n < 0) throw DomainError("max_n must be nonnegative");
    std::vector<std::pair<long, int>> terms;
    for (long j = 1; j * j <= max_n; ++j) terms.emplace_back(j * j, (j % 2 == 1) ? 2 : -2);
    return {Family::OverP, detail::solve_theta_recurrence(max_n, terms)};
}

/// Partitions with no repeated odd part. Uses
/// (q^2;q^2)_inf / (-q;q^2)_inf = sum_{m>=0} (-1)^{T_m} q^{T_m}, T_m = m(m+1)/2.
inline SeqTable build_pod_table(long max_n)
{
    if (max_n < 0) throw DomainError("max_n must be nonnegative");
    std::vector<std::pair<long, int>> terms;
    for (long m = 1;; ++m) {
        const long t = m * (m + 1) / 2;
        if (t > max_n) break;
        terms.emplace_back(t, (t % 2 == 1) ? 1 : -1);
    }
    return {Family::Pod, detail::solve_theta_recurrence(max_n, terms)};
}

inline SeqTable build_table(Family f, long max_n)
{
    switch (f) {
    case Family::P: return build_p_table(max_n);
    case Family::OverP: return build_overp_table(max_n);
    case Family::Pod: return build_pod_table(max_n);
    }
    throw DomainError("unknown family");
}

/// CSV with header `n,value`.
inline void write_csv(std::ostream& os, const SeqTable& t)
{
    os << "n,value\n";
    for (long n = 0; n <= t.max_n(); ++n) os << n << ',' << t.value(n) << '\n';
}

// ---------------------------------------------------------------------------
// Enumeration oracles

enum class PartitionMode { Plain, Over, PodOnly };

/// A partition in nonincreasing order. In overpartition mode `overlined`
/// holds one flag per distinct part, in the order distinct parts appear;
/// the flag marks the first occurrence of that part.
struct Partition {
    std::vector<int> parts;
    std::vector<bool> overlined;

    int total() const
    {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    std::vector<int> distinct_parts() const
    {
        std::vector<int> d;
        for (int p : parts)
            if (d.empty() || d.back() != p) d.push_back(p);
        return d;
    }
    int multiplicity(int part) const
    {
        int c = 0;
        for (int p : parts) c += (p == part);
        return c;
    }
};

constexpr int enumeration_cap(PartitionMode mode)
{
    switch (mode) {
    case PartitionMode::Plain: return 45;
    case PartitionMode::Over: return 30;
    case PartitionMode::PodOnly: return 40;
    }
    return 0;
}

inline bool has_repeated_odd_part(const std::vector<int>& parts)
{
    for (std::size_t i = 1; i < parts.size(); ++i)
        if (parts[i] == parts[i - 1] && parts[i] % 2 == 1) return true;
    return false;
}

/// Pull-style stream over the partitions of n in reverse lexicographic
/// order. Each admissible partition is produced exactly once.
class PartitionStream {
public:
    PartitionStream(int n, PartitionMode mode, int cap)
        : mode_(mode)
    {
        if (n < 0) throw DomainError("cannot partition a negative integer");
        if (n > cap)
            throw CapExceeded("n = " + std::to_string(n) + " above enumeration cap " +
                              std::to_string(cap));
        if (n > 0) current_.push_back(n);
    }
    PartitionStream(int n, PartitionMode mode) : PartitionStream(n, mode, enumeration_cap(mode)) {}

    std::optional<Partition> next()
    {
        switch (mode_) {
        case PartitionMode::Plain: return next_plain();
        case PartitionMode::PodOnly:
            while (auto p = next_plain())
                if (!has_repeated_odd_part(p->parts)) return p;
            return std::nullopt;
        case PartitionMode::Over: return next_over();
        }
        return std::nullopt;
    }

private:
    std::optional<Partition> next_plain()
    {
        if (done_) return std::nullopt;
        Partition out{current_, {}};
        advance();
        return out;
    }

    std::optional<Partition> next_over()
    {
        if (!over_base_ || over_mask_ == (std::uint64_t{1} << over_distinct_)) {
            over_base_ = next_plain();
            if (!over_base_) return std::nullopt;
            over_distinct_ = over_base_->distinct_parts().size();
            over_mask_ = 0;
        }
        Partition out{over_base_->parts, std::vector<bool>(over_distinct_)};
        for (std::size_t i = 0; i < over_distinct_; ++i) out.overlined[i] = (over_mask_ >> i) & 1U;
        ++over_mask_;
        return out;
    }

    void advance()
    {
        // Rightmost part greater than one; everything after it is ones.
        std::size_t ones = 0;
        while (!current_.empty() && current_.back() == 1) {
            current_.pop_back();
            ++ones;
        }
        if (current_.empty()) {
            done_ = true;
            return;
        }
        const int v = --current_.back();
        int rest = static_cast<int>(ones) + 1;
        while (rest >= v) {
            current_.push_back(v);
            rest -= v;
        }
        if (rest > 0) current_.push_back(rest);
    }

    PartitionMode mode_;
    std::vector<int> current_;
    bool done_ = false;
    std::optional<Partition> over_base_;
    std::size_t over_distinct_ = 0;
    std::uint64_t over_mask_ = 0;
};

inline PartitionStream enumerate_partitions(int n, PartitionMode mode)
{
    return PartitionStream(n, mode);
}

template <class Fn>
void for_each_partition(int n, PartitionMode mode, Fn&& fn)
{
    PartitionStream s(n, mode);
    while (auto p = s.next()) fn(*p);
}

}  // namespace pentaverify
