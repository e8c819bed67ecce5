#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace pec
{

/// Exact rational number, always in lowest terms.
///
/// Probabilities flow through every engine as values of this type so that
/// normalization and agreement checks are exact equalities.
class Rational
{
public:
    Rational() = default;
    Rational(long value) : value_{ value } {} // NOLINT(google-explicit-constructor)
    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value);

    /// Accepts `3`, `0.25`, `1/4` and `25/100`. No sign, no exponent.
    static std::optional<Rational> parse(std::string_view text);

    [[nodiscard]] const mpq_class& get() const { return value_; }
    /// Nearest double (GMP's get_d truncates).
    [[nodiscard]] double to_double() const;

    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_probability() const { return sign() >= 0 && *this <= Rational{ 1 }; }

    /// `n` or `n/d`.
    [[nodiscard]] std::string fraction() const;

    /// Terminating decimal with at most `max_digits` fractional digits, if one exists.
    [[nodiscard]] std::optional<std::string> exact_decimal(std::size_t max_digits = 20) const;

    /// Shortest exact decimal when terminating (and short), otherwise `n/d`.
    [[nodiscard]] std::string to_string() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& value) { return Rational{ mpq_class{ -value.value_ } }; }

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return cmp(lhs.value_, rhs.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs)
    {
        return cmp(lhs.value_, rhs.value_) <=> 0;
    }

    [[nodiscard]] std::size_t hash() const;

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& out, const Rational& value);

/// Probabilities are rationals constrained to [0,1]; the alias documents intent.
using Probability = Rational;

} // namespace pec
