#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>

#include "parop/error.hpp"

namespace parop {

using i64 = std::int64_t;

// Exact rational number on a checked int64 numerator/denominator.
//
// Every value is kept normalised: denominator > 0, gcd(|num|, den) = 1.
// Intermediate products run through __int128 and overflow raises
// Error("Overflow") instead of wrapping.  The weight arithmetic in this
// project stays tiny (denominators are odd levels < 100, degrees are small
// multiples of point counts), so int64 headroom is enormous; the check is
// there to make silent wraparound impossible, not because it is expected.
class Rat {
public:
    using i64 = std::int64_t;
    using i128 = __int128;

    constexpr Rat() : num_(0), den_(1) {}
    Rat(i64 n) : num_(n), den_(1) {}
    Rat(i64 n, i64 d) { assign(n, d); }

    static Rat of(i64 n, i64 d) { return Rat(n, d); }

    // Parses "a", "-a", "a/b"; whitespace is not accepted.
    static Rat parse(std::string_view text);

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    // Largest integer <= value (floor toward -infinity).
    i64 floor() const {
        if (num_ >= 0) return num_ / den_;
        return -(((-static_cast<i128>(num_)) + den_ - 1) / den_);
    }

    // Value minus floor, in [0, 1).
    Rat frac() const { return *this - Rat(floor()); }

    Rat operator-() const {
        Rat r;
        r.num_ = checked(-static_cast<i128>(num_));
        r.den_ = den_;
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                    static_cast<i128>(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        require(b.num_ != 0, "DivisionByZero", "rational division by zero");
        return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
    }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // "a/b" in lowest terms, "a" when integral.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static i64 checked(i128 v) {
        require(v <= std::numeric_limits<i64>::max() && v >= std::numeric_limits<i64>::min(),
                "Overflow", "rational arithmetic overflow");
        return static_cast<i64>(v);
    }

    static Rat make(i128 n, i128 d) {
        require(d != 0, "DivisionByZero", "zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 a = n < 0 ? -n : n;
        i128 g = gcd128(a, d);
        if (g > 1) { n /= g; d /= g; }
        Rat r;
        r.num_ = checked(n);
        r.den_ = checked(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    void assign(i64 n, i64 d) {
        Rat r = make(n, d);
        num_ = r.num_;
        den_ = r.den_;
    }

    i64 num_;
    i64 den_;
};

inline Rat Rat::parse(std::string_view text) {
    auto parse_int = [](std::string_view s) -> i64 {
        require(!s.empty(), "ParseError", "empty integer");
        bool neg = false;
        std::size_t i = 0;
        if (s[0] == '-' || s[0] == '+') { neg = s[0] == '-'; i = 1; }
        require(i < s.size(), "ParseError", "bare sign is not an integer");
        i128 v = 0;
        for (; i < s.size(); ++i) {
            require(s[i] >= '0' && s[i] <= '9', "ParseError",
                    "invalid rational literal: " + std::string(s));
            v = v * 10 + (s[i] - '0');
            require(v <= static_cast<i128>(std::numeric_limits<i64>::max()) + 1, "Overflow",
                    "integer literal too large");
        }
        return checked(neg ? -v : v);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(text));
    return Rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

} // namespace parop
