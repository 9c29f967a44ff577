#pragma once

// Coefficient fields for the linear-algebra kernel: exact rationals (default)
// and the two-element field F2. Both satisfy the small "field value" contract
// the Matrix template relies on: +, -, *, /, ==, zero/one construction from int.

#include "common.hpp"

#include <cstdint>
#include <iosfwd>
#include <ostream>

namespace afc {

struct F2 {
    std::uint8_t v = 0; // 0 or 1

    F2() = default;
    F2(int x) : v(static_cast<std::uint8_t>(((x % 2) + 2) % 2)) {}

    friend F2 operator+(F2 a, F2 b) { return F2(a.v ^ b.v); }
    friend F2 operator-(F2 a, F2 b) { return F2(a.v ^ b.v); }
    friend F2 operator*(F2 a, F2 b) { return F2(a.v & b.v); }
    friend F2 operator/(F2 a, F2 b) {
        if (b.v == 0) throw std::invalid_argument("F2: division by zero");
        return a;
    }
    F2 operator-() const { return *this; }
    F2& operator+=(F2 b) { v ^= b.v; return *this; }
    F2& operator-=(F2 b) { v ^= b.v; return *this; }
    F2& operator*=(F2 b) { v &= b.v; return *this; }
    friend bool operator==(F2 a, F2 b) { return a.v == b.v; }
    friend bool operator!=(F2 a, F2 b) { return a.v != b.v; }
    friend std::ostream& operator<<(std::ostream& os, F2 a) { return os << int(a.v); }
};

} // namespace afc
