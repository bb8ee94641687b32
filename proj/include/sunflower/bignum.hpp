#pragma once

// Exact integer and rational arithmetic for Gaussian coefficients and bounds.

#include "sunflower/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace sunflower {

using BigNat = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigNat ipow(const BigNat& base, std::uint64_t e) {
    BigNat r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rational rpow(const Rational& base, std::uint64_t e) {
    Rational r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// [m]_q = (q^m - 1)/(q - 1), and m itself when q = 1.
inline BigNat gauss_bracket(std::int64_t m, std::uint64_t q) {
    detail::require(m >= 0, "q-integer requires m >= 0");
    if (q == 1) return BigNat(m);
    BigNat r = 0, term = 1;
    for (std::int64_t i = 0; i < m; ++i) {
        r += term;
        term *= q;
    }
    return r;
}

/// Gaussian binomial coefficient [n choose m]_q; zero outside 0 <= m <= n.
/// Each intermediate value is itself a Gaussian coefficient, so every
/// division is exact.
inline BigNat gaussian(std::int64_t n, std::int64_t m, std::uint64_t q) {
    if (m < 0 || n < 0 || m > n) return 0;
    BigNat r = 1;
    for (std::int64_t i = 1; i <= m; ++i) {
        r *= gauss_bracket(n - m + i, q);
        r /= gauss_bracket(i, q);
    }
    return r;
}

inline std::string to_decimal(const BigNat& x) { return x.str(); }

}  // namespace sunflower
