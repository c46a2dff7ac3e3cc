#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace pentaverify {

using BigInt = boost::multiprecision::cpp_int;

/// Sign and natural log of |value|. Keeps comparisons between huge exact
/// integers and analytic formulas inside double range.
struct LogMagnitude {
    int sign = 0;
    double ln_abs = -std::numeric_limits<double>::infinity();

    static LogMagnitude zero() { return {}; }
    static LogMagnitude positive(double ln) { return {1, ln}; }

    bool is_zero() const { return sign == 0; }
};

/// ln|x| as (bitlen - 53) ln 2 + ln(top 53 bits).
inline LogMagnitude log_magnitude(const BigInt& x)
{
    if (x == 0) return LogMagnitude::zero();
    const int sign = x < 0 ? -1 : 1;
    BigInt a = boost::multiprecision::abs(x);
    const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(a)) + 1;
    if (bits <= 53) return {sign, std::log(a.convert_to<double>())};
    const auto shift = bits - 53;
    BigInt top = a >> static_cast<unsigned>(shift);
    return {sign, std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0)};
}

}  // namespace pentaverify
