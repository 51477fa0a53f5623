#ifndef WEBCURV_RATIONAL_HPP
#define WEBCURV_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace webcurv {

/// Exact fraction with 64-bit numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator. Arithmetic that
/// would overflow throws std::overflow_error; callers that only want a
/// best-effort exact result (the simplifier) catch it and fall back.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Parses an integer or plain decimal literal ("12", "0.125", "3.").
    static Rational from_decimal(const std::string& text);

    Rational operator-() const;
    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational reciprocal() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "3", "-1", "3/2".
    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Integer power with overflow checking; negative exponents invert.
Rational pow(const Rational& base, int exponent);

}  // namespace webcurv

#endif
