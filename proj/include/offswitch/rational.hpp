#ifndef OFFSWITCH_RATIONAL_HPP
#define OFFSWITCH_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace offswitch {

/// Exact rational on 64-bit words. Always normalized: den > 0, gcd(num, den) = 1.
/// Intermediate products go through 128-bit arithmetic; anything that would not
/// fit back into 64 bits throws std::overflow_error. Probabilities and utilities
/// in this project stay tiny, so an overflow signals a logic bug, not a limit to
/// work around.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const;

    /// Non-negative integer power.
    Rational pow(unsigned exponent) const;

    /// "n/d" when d != 1, plain "n" otherwise.
    std::string str() const;

    /// Accepts "n", "n/d", and optional leading '-'.
    static Rational parse(const std::string& text);

private:
    std::int64_t num_;
    std::int64_t den_;

    void normalize();
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace offswitch

#endif
