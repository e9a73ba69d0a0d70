#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "rosetree/errors.hpp"

namespace rosetree {

// All reported quantities are exact rationals; nothing in the library rounds.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(unsigned n) { return BigInt(1) << n; }

inline BigInt pow_int(unsigned base, unsigned n) {
    BigInt r = 1;
    for (unsigned i = 0; i < n; ++i) r *= base;
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// "p/q" in lowest terms, "p" when q == 1.
inline std::string rat_str(const Rat& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

// Accepts "p", "p/q", and plain decimals such as "0.25" or "1e-9".
Rat rat_parse(const std::string& text);

} // namespace rosetree
