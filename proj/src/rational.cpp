#include "volatix/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace volatix {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 mul_checked(i128 a, i128 b) {
    i128 out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational: 128-bit product overflow");
    return out;
}

i128 add_checked(i128 a, i128 b) {
    i128 out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational: 128-bit sum overflow");
    return out;
}

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.insert(out.begin(), char('0' + int(v % 10)));
        v /= 10;
    }
    return out;
}

i128 pow10(int n) {
    i128 p = 1;
    for (int i = 0; i < n; ++i) p = mul_checked(p, 10);
    return p;
}

// Rounds |num|/den * 10^decimals half away from zero. Returns the magnitude.
u128 scaled_round(i128 num, i128 den, int decimals) {
    const u128 n = uabs(mul_checked(num, pow10(decimals)));
    const u128 d = u128(den);
    return (2 * n + d) / (2 * d);
}

std::string place_point(u128 magnitude, int decimals, bool negative) {
    std::string digits = u128_to_string(magnitude);
    if (decimals > 0) {
        if (digits.size() <= std::size_t(decimals)) digits.insert(0, std::size_t(decimals) + 1 - digits.size(), '0');
        digits.insert(digits.size() - std::size_t(decimals), 1, '.');
    }
    if (negative && magnitude != 0) digits.insert(0, 1, '-');
    return digits;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const u128 g = gcd128(uabs(num), u128(den));
    if (g > 1) {
        num /= i128(g);
        den /= i128(g);
    }
    constexpr i128 lo = std::numeric_limits<std::int64_t>::min() + 1;
    constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) throw std::overflow_error("rational: value exceeds 64-bit range");
    Rational r;
    r.num_ = std::int64_t(num);
    r.den_ = std::int64_t(den);
    return r;
}

Rational Rational::operator-() const { return from_wide(-i128(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
    const i128 g = i128(gcd128(u128(a.den_), u128(b.den_)));
    const i128 lhs = mul_checked(a.num_, i128(b.den_) / g);
    const i128 rhs = mul_checked(b.num_, i128(a.den_) / g);
    return Rational::from_wide(add_checked(lhs, rhs), mul_checked(i128(a.den_) / g, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::from_wide(mul_checked(a.num_, b.num_), mul_checked(a.den_, b.den_));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    return Rational::from_wide(mul_checked(a.num_, b.den_), mul_checked(a.den_, b.num_));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
}

double Rational::to_double() const { return double(num_) / double(den_); }

std::string Rational::to_string() const {
    std::string out = std::to_string(num_);
    if (den_ != 1) out += "/" + std::to_string(den_);
    return out;
}

std::string Rational::to_fixed(int decimals) const {
    if (decimals < 0) throw std::invalid_argument("rational: negative decimal count");
    return place_point(scaled_round(num_, den_, decimals), decimals, num_ < 0);
}

std::string Rational::to_significant(int digits) const {
    if (digits < 1) throw std::invalid_argument("rational: need at least one significant digit");
    if (num_ == 0) return "0";
    // Find e with 10^e <= |x| < 10^(e+1).
    const u128 n = uabs(num_);
    const u128 d = u128(den_);
    int e = 0;
    if (n >= d) {
        u128 p = 10;
        while (p * d <= n) {
            p *= 10;
            ++e;
        }
    } else {
        u128 p = 1;
        while (n * p < d) {
            p *= 10;
            --e;
        }
    }
    const int decimals = std::max(0, digits - 1 - e);
    if (decimals > 0) return place_point(scaled_round(num_, den_, decimals), decimals, num_ < 0);
    // Integer part wider than the requested digits: round to a power of ten.
    const i128 step = pow10(e + 1 - digits);
    const u128 q = (2 * n + u128(step) * d) / (2 * u128(step) * d);
    return place_point(q * u128(step), 0, num_ < 0);
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t n = 0, d = 0;
        auto a = text.substr(0, slash), b = text.substr(slash + 1);
        auto ra = std::from_chars(a.data(), a.data() + a.size(), n);
        auto rb = std::from_chars(b.data(), b.data() + b.size(), d);
        if (ra.ec != std::errc{} || ra.ptr != a.data() + a.size() || rb.ec != std::errc{} ||
            rb.ptr != b.data() + b.size() || d == 0)
            return fail();
        return Rational(n, d);
    }
    bool negative = false;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        i = 1;
    }
    i128 num = 0, den = 1;
    bool seen_digit = false, seen_point = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '.') {
            if (seen_point) return fail();
            seen_point = true;
        } else if (ch >= '0' && ch <= '9') {
            seen_digit = true;
            num = add_checked(mul_checked(num, 10), ch - '0');
            if (seen_point) den = mul_checked(den, 10);
        } else {
            return fail();
        }
    }
    if (!seen_digit) return fail();
    return from_wide(negative ? -num : num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace volatix
