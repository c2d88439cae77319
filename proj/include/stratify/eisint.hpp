#pragma once

#include "stratify/core.hpp"

#include <compare>
#include <cstdint>
#include <functional>

namespace stratify {

// a + b*omega with omega^2 = -1 - omega.
struct EisInt {
    std::int64_t a = 0;
    std::int64_t b = 0;

    constexpr EisInt() = default;
    constexpr EisInt(std::int64_t a_, std::int64_t b_ = 0) : a(a_), b(b_) {}

    static constexpr EisInt omega() { return {0, 1}; }
    static constexpr EisInt omega2() { return {-1, -1}; }
    static constexpr EisInt theta() { return {1, 2}; }  // omega - omega^2

    constexpr EisInt conj() const { return {a - b, -b}; }
    constexpr std::int64_t norm() const { return a * a - a * b + b * b; }
    constexpr bool is_zero() const { return a == 0 && b == 0; }
    constexpr bool is_real() const { return b == 0; }

    friend constexpr EisInt operator+(EisInt x, EisInt y) { return {x.a + y.a, x.b + y.b}; }
    friend constexpr EisInt operator-(EisInt x, EisInt y) { return {x.a - y.a, x.b - y.b}; }
    friend constexpr EisInt operator-(EisInt x) { return {-x.a, -x.b}; }
    friend constexpr EisInt operator*(EisInt x, EisInt y) {
        // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    EisInt& operator+=(EisInt y) { return *this = *this + y; }
    EisInt& operator-=(EisInt y) { return *this = *this - y; }
    EisInt& operator*=(EisInt y) { return *this = *this * y; }

    friend constexpr bool operator==(const EisInt&, const EisInt&) = default;
    friend constexpr auto operator<=>(const EisInt&, const EisInt&) = default;

    std::string str() const;
};

// Exact quotient x / y; nullopt-like failure is reported by the bool.
bool eis_divides(EisInt y, EisInt x);
EisInt eis_exact_div(EisInt x, EisInt y);
// Division with remainder of smaller norm (nearest-lattice-point rounding).
EisInt eis_round_div(EisInt x, EisInt y);
EisInt eis_gcd(EisInt x, EisInt y);
// Real part as a rational: a - b/2.
Rational eis_real_part(EisInt x);
// Unit-normalised associate for comparing ideals.
EisInt eis_normalize_unit(EisInt x);

struct EisIntHash {
    size_t operator()(const EisInt& x) const {
        return std::hash<std::int64_t>()(x.a * 1000003 + x.b);
    }
};

}  // namespace stratify
