#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "adjoints/errors.hpp"

namespace adjoints {

// Arbitrary-precision rational, GMP-backed. Always kept canonical.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "a" or "a/b" with optional leading '-'.
inline Rat rat_from_string(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw FormatError("not a rational literal: '" + s + "'");
    }
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_pow(const Rat& base, std::int64_t e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw DivisionByZero("0 raised to a negative power");
        return Rat(0);
    }
    Rat b = e < 0 ? Rat(1) / base : base;
    std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    Rat acc(1);
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

inline Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

}  // namespace adjoints
