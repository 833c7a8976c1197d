#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "apacket/errors.hpp"

namespace apacket {

// Exact arithmetic over (1/2)Z.  Values are stored as twice their mathematical
// value, so every quantity the enumeration touches (A, B, segment endpoints,
// chain midpoints t with their offsets delta) is represented without rounding.
// No floating point is used anywhere in the library.
class HalfInt {
public:
    constexpr HalfInt() : t_(0) {}
    // Implicit from whole numbers keeps formulas readable: A - B + 1, B + l, ...
    constexpr HalfInt(std::int64_t n) : t_(2 * n) {}

    static constexpr HalfInt from_twice(std::int64_t twice) {
        HalfInt h;
        h.t_ = twice;
        return h;
    }
    // n/2 as a value; HalfInt::halves(5) is 5/2.
    static constexpr HalfInt halves(std::int64_t n) { return from_twice(n); }

    constexpr std::int64_t twice() const { return t_; }
    constexpr bool is_integral() const { return t_ % 2 == 0; }

    std::int64_t to_int() const {
        APK_CHECK(is_integral(), "half-integer used where an integer is required");
        return t_ / 2;
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.t_ + b.t_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.t_ - b.t_); }
    friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.t_); }
    friend constexpr HalfInt operator*(std::int64_t k, HalfInt a) { return from_twice(k * a.t_); }

    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

    HalfInt& operator+=(HalfInt o) {
        t_ += o.t_;
        return *this;
    }
    HalfInt& operator-=(HalfInt o) {
        t_ -= o.t_;
        return *this;
    }

    // "3", "-2", "1/2", "-5/2" (lowest terms; the denominator is always 2).
    std::string str() const {
        if (is_integral()) return std::to_string(t_ / 2);
        return std::to_string(t_) + "/2";
    }

private:
    std::int64_t t_;
};

// Exact midpoint (a+b)/2; requires a+b to be integral so the result stays in (1/2)Z.
inline HalfInt midpoint(HalfInt a, HalfInt b) {
    const std::int64_t s = a.twice() + b.twice();
    APK_CHECK(s % 2 == 0, "midpoint leaves (1/2)Z");
    return HalfInt::from_twice(s / 2);
}

// A sign in {+1, -1}.  Kept as a tiny strong type so eta/zeta/epsilon values
// cannot be confused with the integer quantities around them.
class Sign {
public:
    constexpr Sign() : v_(1) {}
    constexpr explicit Sign(int v) : v_(v >= 0 ? 1 : -1) {}

    static constexpr Sign plus() { return Sign(1); }
    static constexpr Sign minus() { return Sign(-1); }

    constexpr int value() const { return v_; }
    constexpr Sign flipped() const { return Sign(-v_); }
    constexpr bool positive() const { return v_ > 0; }

    friend constexpr Sign operator*(Sign a, Sign b) { return Sign(a.v_ * b.v_); }
    friend constexpr bool operator==(Sign a, Sign b) = default;

    char ch() const { return v_ > 0 ? '+' : '-'; }

private:
    int v_;
};

// (-1)^k for an integral exponent k (the exponent may be negative).
inline Sign pow_minus_one(HalfInt k) {
    const std::int64_t n = k.to_int();
    return (n % 2 == 0) ? Sign::plus() : Sign::minus();
}

// s^k for an integral exponent k.
inline Sign sign_pow(Sign s, HalfInt k) {
    const std::int64_t n = k.to_int();
    return (n % 2 == 0) ? Sign::plus() : s;
}

// Floor division by 2 of an integral HalfInt (used for the index bound
// floor((A - B + 1)/2); A - B is always integral on a single block).
inline std::int64_t floor_half(HalfInt h) {
    const std::int64_t n = h.to_int();
    return (n >= 0) ? n / 2 : (n - 1) / 2;
}

} // namespace apacket
