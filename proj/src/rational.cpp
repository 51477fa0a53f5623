#include "webcurv/rational.hpp"

#include <cctype>
#include <numeric>

namespace webcurv {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
    return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = checked_mul(num, -1);
        den = checked_mul(den, -1);
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g > 1 ? num / g : num;
    den_ = g > 1 ? den / g : den;
}

Rational Rational::from_decimal(const std::string& text) {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool after_point = false;
    bool any_digit = false;
    for (char c : text) {
        if (c == '.') {
            if (after_point) throw std::invalid_argument("malformed number: " + text);
            after_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("malformed number: " + text);
        any_digit = true;
        num = checked_add(checked_mul(num, 10), c - '0');
        if (after_point) den = checked_mul(den, 10);
    }
    if (!any_digit) throw std::invalid_argument("malformed number: " + text);
    return Rational(num, den);
}

Rational Rational::operator-() const { return Rational(checked_mul(num_, -1), den_); }

Rational Rational::reciprocal() const {
    if (num_ == 0) throw std::domain_error("reciprocal of zero");
    return Rational(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const std::int64_t da = a.den_ / g;
    const std::int64_t db = b.den_ / g;
    return Rational(checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)),
                    checked_mul(checked_mul(da, db), g));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    const std::int64_t s1 = g1 > 1 ? g1 : 1;
    const std::int64_t s2 = g2 > 1 ? g2 : 1;
    return Rational(checked_mul(a.num_ / s1, b.num_ / s2), checked_mul(a.den_ / s2, b.den_ / s1));
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational pow(const Rational& base, int exponent) {
    Rational b = exponent < 0 ? base.reciprocal() : base;
    unsigned n = exponent < 0 ? static_cast<unsigned>(-exponent) : static_cast<unsigned>(exponent);
    Rational acc(1);
    while (n != 0) {
        if (n & 1U) acc = acc * b;
        n >>= 1U;
        if (n != 0) b = b * b;
    }
    return acc;
}

}  // namespace webcurv
