#include "l1sp/rational.hpp"

#include "l1sp/error.hpp"

#include <algorithm>

namespace l1sp {

namespace {

using UInt128 = unsigned __int128;

int ctz128(UInt128 v) {
    auto lo = static_cast<std::uint64_t>(v);
    if (lo != 0) return __builtin_ctzll(lo);
    return 64 + __builtin_ctzll(static_cast<std::uint64_t>(v >> 64));
}

UInt128 gcd128(UInt128 a, UInt128 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = ctz128(a | b);
    a >>= ctz128(a);
    do {
        b >>= ctz128(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

UInt128 magnitude(Int128 v) {
    return v < 0 ? UInt128(0) - static_cast<UInt128>(v) : static_cast<UInt128>(v);
}

[[noreturn]] void overflow() {
    throw Error(ErrorCode::ArithmeticOverflow, "rational arithmetic exceeded 128 bits");
}

Int128 checked_mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) overflow();
    return r;
}

Int128 checked_add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) overflow();
    return r;
}

Int128 floor_div(Int128 a, Int128 b) {
    Int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

Rational Rational::from_fraction(Int128 num, Int128 den) {
    if (den == 0) throw Error(ErrorCode::ArithmeticOverflow, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Rational r;
    const UInt128 g = gcd128(magnitude(num), static_cast<UInt128>(den));
    if (g > 1) {
        num /= static_cast<Int128>(g);
        den /= static_cast<Int128>(g);
    }
    r.num_ = num;
    r.den_ = den;
    return r;
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&] { throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'"); };
    if (text == "inf") return infinite();
    auto parse_int = [&](std::string_view part) -> Int128 {
        if (part.empty()) fail();
        bool neg = false;
        std::size_t i = 0;
        if (part[0] == '-' || part[0] == '+') {
            neg = part[0] == '-';
            i = 1;
        }
        if (i == part.size()) fail();
        Int128 v = 0;
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') fail();
            v = checked_add(checked_mul(v, 10), part[i] - '0');
        }
        return neg ? -v : v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_fraction(parse_int(text), 1);
    const Int128 den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    return from_fraction(parse_int(text.substr(0, slash)), den);
}

Int128 Rational::floor() const noexcept { return floor_div(num_, den_); }

double Rational::to_double() const noexcept {
    if (is_infinite()) return 1.0 / 0.0;
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string int128_to_string(Int128 value) {
    if (value == 0) return "0";
    const bool neg = value < 0;
    UInt128 v = magnitude(value);
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    if (neg) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

std::string Rational::to_string() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return int128_to_string(num_);
    return int128_to_string(num_) + "/" + int128_to_string(den_);
}

Rational Rational::operator-() const {
    if (is_infinite()) throw Error(ErrorCode::ArithmeticOverflow, "negating infinity");
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (is_infinite() || o.is_infinite()) {
        *this = infinite();
        return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
        num_ = checked_add(num_, o.num_);
        return *this;
    }
    if (den_ == o.den_) {
        *this = from_fraction(checked_add(num_, o.num_), den_);
        return *this;
    }
    const Int128 g = static_cast<Int128>(gcd128(static_cast<UInt128>(den_), static_cast<UInt128>(o.den_)));
    const Int128 lhs = checked_mul(num_, o.den_ / g);
    const Int128 rhs = checked_mul(o.num_, den_ / g);
    *this = from_fraction(checked_add(lhs, rhs), checked_mul(den_ / g, o.den_));
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (o.is_infinite()) throw Error(ErrorCode::ArithmeticOverflow, "subtracting infinity");
    return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
    if (is_infinite() || o.is_infinite()) {
        if (sign() < 0 || o.sign() < 0) throw Error(ErrorCode::ArithmeticOverflow, "infinity times negative");
        if (sign() == 0 || o.sign() == 0) {
            *this = Rational(0);
            return *this;
        }
        *this = infinite();
        return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
        num_ = checked_mul(num_, o.num_);
        return *this;
    }
    const Int128 g1 = static_cast<Int128>(gcd128(magnitude(num_), static_cast<UInt128>(o.den_)));
    const Int128 g2 = static_cast<Int128>(gcd128(magnitude(o.num_), static_cast<UInt128>(den_)));
    const Int128 n = checked_mul(g1 ? num_ / g1 : num_, g2 ? o.num_ / g2 : o.num_);
    const Int128 d = checked_mul(g2 ? den_ / g2 : den_, g1 ? o.den_ / g1 : o.den_);
    *this = from_fraction(n, d);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_infinite() || is_infinite()) throw Error(ErrorCode::ArithmeticOverflow, "division with infinity");
    if (o.num_ == 0) throw Error(ErrorCode::ArithmeticOverflow, "division by zero");
    Rational inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    if (inv.den_ < 0) {
        inv.num_ = -inv.num_;
        inv.den_ = -inv.den_;
    }
    return *this *= inv;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
        return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    Int128 lhs;
    Int128 rhs;
    if (!__builtin_mul_overflow(a.num_, b.den_, &lhs) && !__builtin_mul_overflow(b.num_, a.den_, &rhs)) {
        return lhs <=> rhs;
    }
    // Slow path: continued-fraction comparison, never overflows.
    Int128 n1 = a.num_, d1 = a.den_, n2 = b.num_, d2 = b.den_;
    int flip = 1;
    for (;;) {
        const Int128 q1 = floor_div(n1, d1);
        const Int128 q2 = floor_div(n2, d2);
        if (q1 != q2) return (q1 < q2) == (flip > 0) ? std::strong_ordering::less : std::strong_ordering::greater;
        const Int128 r1 = n1 - q1 * d1;
        const Int128 r2 = n2 - q2 * d2;
        if (r1 == 0 && r2 == 0) return std::strong_ordering::equal;
        if (r1 == 0 || r2 == 0) {
            const bool less = (r1 == 0) == (flip > 0);
            return less ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        // r1/d1 vs r2/d2 has the opposite order of d1/r1 vs d2/r2.
        n1 = d1;
        d1 = r1;
        n2 = d2;
        d2 = r2;
        flip = -flip;
    }
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace l1sp
