#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace l1sp {

using Int128 = __int128;

/// Exact rational number with 128-bit numerator/denominator, always kept in
/// reduced form with a positive denominator. A distinguished positive
/// infinity absorbs addition and multiplication by positive values.
///
/// Arithmetic that would overflow 128 bits throws Error(ArithmeticOverflow)
/// instead of wrapping.
class Rational {
public:
    constexpr Rational() noexcept = default;
    constexpr Rational(std::int64_t value) noexcept : num_(value) {}  // NOLINT(implicit)

    static Rational from_fraction(Int128 num, Int128 den);
    static constexpr Rational infinite() noexcept {
        Rational r;
        r.num_ = 1;
        r.den_ = 0;
        return r;
    }

    /// Parses "p", "p/q" or "inf".
    static Rational parse(std::string_view text);

    bool is_infinite() const noexcept { return den_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }
    Int128 num() const noexcept { return num_; }
    Int128 den() const noexcept { return den_; }
    int sign() const noexcept { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    /// Largest integer not above the value. Undefined for infinity.
    Int128 floor() const noexcept;
    double to_double() const noexcept;
    std::string to_string() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    Int128 num_ = 0;
    Int128 den_ = 1;
};

Rational abs(const Rational& r);

std::string int128_to_string(Int128 value);

}  // namespace l1sp
