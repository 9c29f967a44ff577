#pragma once

// Shared exact-arithmetic aliases and error types used across the library.
// All arithmetic is exact: big integers and big rationals, never floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace afc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when an operation would exceed a configured size bound
// (matrix dimension, expansion depth, patch size).
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by the tiling coder when the queried point lies on a tile
// edge at some level and therefore has no well defined digit.
struct boundary_point_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by digit expansion when the greedy loop exceeds its depth cap.
struct depth_exceeded_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int pow_int(const Int& base, unsigned e) {
    Int acc = 1, b = base;
    for (; e; e >>= 1) {
        if (e & 1) acc *= b;
        b *= b;
    }
    return acc;
}

inline Rat pow_rat(const Rat& base, int e) {
    if (e < 0) {
        if (base == 0) throw std::invalid_argument("pow_rat: zero to negative power");
        return Rat(1) / pow_rat(base, -e);
    }
    Rat acc = 1, b = base;
    for (unsigned k = static_cast<unsigned>(e); k; k >>= 1) {
        if (k & 1) acc *= b;
        b *= b;
    }
    return acc;
}

inline std::string rat_str(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

inline std::string int_str(const Int& n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

inline Rat parse_rat(const std::string& s) { return Rat(s); }
inline Int parse_int(const std::string& s) { return Int(s); }

// Decimal rendering of an exact rational to `sig` significant digits,
// round-half-up, no floating point involved. Used for the "approximate"
// printouts (K-theory values, SVG coordinates).
inline std::string rat_decimal(const Rat& x, int sig) {
    if (sig < 1) sig = 1;
    if (x == 0) return "0";
    const bool neg = x < 0;
    Rat v = neg ? Rat(-x) : x;
    // Find exponent e with 10^e <= v < 10^(e+1).
    int e = 0;
    if (v >= 1) {
        Rat t = v;
        while (t >= 10) { t /= 10; ++e; }
    } else {
        Rat t = v;
        while (t < 1) { t *= 10; --e; }
    }
    // digits = round(v * 10^(sig-1-e))
    const int shift = sig - 1 - e;
    Rat scaled = v * (shift >= 0 ? Rat(pow_int(10, static_cast<unsigned>(shift)))
                                 : Rat(1) / Rat(pow_int(10, static_cast<unsigned>(-shift))));
    Int digits = boost::multiprecision::numerator(scaled + Rat(1, 2)) /
                 boost::multiprecision::denominator(scaled + Rat(1, 2));
    std::string ds = int_str(digits);
    if (static_cast<int>(ds.size()) > sig) { // rounding overflowed, e.g. 999.96 -> 1000
        ds.pop_back();
        ++e;
    }
    std::string out;
    if (neg) out += '-';
    if (e >= 0 && e < sig) {
        out += ds.substr(0, static_cast<size_t>(e) + 1);
        std::string frac = ds.substr(static_cast<size_t>(e) + 1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
    } else if (e < 0 && e >= -4) {
        out += "0.";
        out.append(static_cast<size_t>(-e - 1), '0');
        while (!ds.empty() && ds.back() == '0') ds.pop_back();
        out += ds;
    } else {
        out += ds.substr(0, 1);
        std::string frac = ds.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        out += "e" + std::to_string(e);
    }
    return out;
}

} // namespace afc
