#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace volatix {

// Exact rational number with 64-bit numerator and denominator.
//
// Always kept in lowest terms with a positive denominator. Intermediate
// products are formed in 128-bit arithmetic and the result is reduced before
// being narrowed back to 64 bits; a result that still does not fit throws
// std::overflow_error rather than wrapping.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit from integers
    Rational(std::int64_t num, std::int64_t den);

    [[nodiscard]] std::int64_t num() const { return num_; }
    [[nodiscard]] std::int64_t den() const { return den_; }

    [[nodiscard]] bool is_zero() const { return num_ == 0; }
    [[nodiscard]] bool is_integer() const { return den_ == 1; }
    [[nodiscard]] int sign() const { return (num_ > 0) - (num_ < 0); }

    Rational operator-() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    [[nodiscard]] double to_double() const;

    // "num/den", or just "num" for integers.
    [[nodiscard]] std::string to_string() const;

    // Decimal rendering rounded half away from zero to `decimals` places.
    [[nodiscard]] std::string to_fixed(int decimals) const;

    // Decimal rendering rounded to `digits` significant figures (no exponent).
    [[nodiscard]] std::string to_significant(int digits) const;

    // Parses "12", "-3", "16.15", ".5" or "7/3" exactly.
    static Rational parse(std::string_view text);

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace volatix
