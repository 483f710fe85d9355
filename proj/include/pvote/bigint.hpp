#ifndef PVOTE_BIGINT_HPP
#define PVOTE_BIGINT_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pvote {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(std::int64_t base, unsigned exponent) {
    return boost::multiprecision::pow(BigInt(base), exponent);
}

/// Natural log of a positive big integer without overflowing a double.
inline double log_of(const BigInt& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    const auto bits = boost::multiprecision::msb(x);
    if (bits < 1000) return std::log(x.convert_to<double>());
    const auto shift = bits - 60;
    const BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

/// s^(1/p) for s >= 0.
inline double root_of(const BigInt& s, double p) {
    if (s == 0) return 0.0;
    const double r = boost::multiprecision::msb(s) < 53 ? std::pow(s.convert_to<double>(), 1.0 / p)
                                                        : std::exp(log_of(s) / p);
    // Exact integer roots come back exact (a single reversed margin's norm is the margin itself).
    const double k = std::round(r);
    if (p == std::floor(p) && k > 0 && k < 9.0e15 && boost::multiprecision::pow(BigInt(static_cast<std::int64_t>(k)), static_cast<unsigned>(p)) == s)
        return k;
    return r;
}

inline bool fits_int64(const BigInt& x) {
    return x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max();
}

inline std::string to_string(const BigInt& x) { return x.str(); }

} // namespace pvote

#endif // PVOTE_BIGINT_HPP
