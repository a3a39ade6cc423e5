#include "offswitch/rational.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace offswitch {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = narrow(-Wide(num_));
        den_ = narrow(-Wide(den_));
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = narrow(-Wide(num_));
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    Wide n = Wide(num_) * o.den_ + Wide(o.num_) * den_;
    Wide d = Wide(den_) * o.den_;
    num_ = narrow(n);
    den_ = narrow(d);
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
    // Cross-reduce first so the narrow() below rarely has anything to complain about.
    std::int64_t g1 = std::gcd(num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_, den_);
    Wide n = Wide(num_ / g1) * (o.num_ / g2);
    Wide d = Wide(den_ / g2) * (o.den_ / g1);
    num_ = narrow(n);
    den_ = narrow(d);
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    Rational inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    inv.normalize();
    return *this *= inv;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    Wide lhs = Wide(num_) * o.den_;
    Wide rhs = Wide(o.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::pow(unsigned exponent) const {
    Rational result(1);
    Rational base = *this;
    while (exponent > 0) {
        if (exponent & 1u) result *= base;
        base *= base;
        exponent >>= 1u;
        if (exponent == 0) break;
    }
    return result;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = text.find('/');
    auto to_int = [&](const std::string& part) {
        std::size_t used = 0;
        long long v;
        try {
            v = std::stoll(part, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad rational literal: " + text);
        }
        if (used != part.size()) throw std::invalid_argument("bad rational literal: " + text);
        return static_cast<std::int64_t>(v);
    };
    if (slash == std::string::npos) return Rational(to_int(text));
    return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace offswitch
