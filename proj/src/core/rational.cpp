#include "pec/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace pec
{

namespace
{

bool all_digits(std::string_view text)
{
    return !text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Parses `digits` or `digits.digits` exactly.
std::optional<mpq_class> parse_decimal(std::string_view text)
{
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        if (!all_digits(text))
            return std::nullopt;
        return mpq_class{ mpz_class{ std::string{ text }, 10 } };
    }
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac))
        return std::nullopt;
    mpz_class numerator{ std::string{ whole } + std::string{ frac }, 10 };
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, frac.size());
    mpq_class result{ numerator, denominator };
    result.canonicalize();
    return result;
}

} // namespace

Rational::Rational(long numerator, long denominator)
{
    if (denominator == 0)
        throw std::domain_error("rational with zero denominator");
    value_ = mpq_class{ numerator, 1 } / mpq_class{ denominator, 1 };
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_{ std::move(value) }
{
    value_.canonicalize();
}

std::optional<Rational> Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        auto value = parse_decimal(text);
        if (!value)
            return std::nullopt;
        return Rational{ *value };
    }
    auto numerator = parse_decimal(text.substr(0, slash));
    auto denominator = parse_decimal(text.substr(slash + 1));
    if (!numerator || !denominator || sgn(*denominator) == 0)
        return std::nullopt;
    return Rational{ mpq_class{ *numerator / *denominator } };
}

double Rational::to_double() const
{
    if (is_zero())
        return 0.0;
    // 25 significant digits, then let strtod round
    const mpz_class& num = value_.get_num();
    const mpz_class& den = value_.get_den();
    const long shift = 25 + static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10)) -
                       static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10));
    mpz_class scaled;
    mpz_class power;
    if (shift >= 0) {
        mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        scaled = num * power / den;
    } else {
        mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        scaled = num / (den * power);
    }
    const std::string text = scaled.get_str() + "e" + std::to_string(-shift);
    return std::strtod(text.c_str(), nullptr);
}

std::string Rational::fraction() const
{
    if (value_.get_den() == 1)
        return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::optional<std::string> Rational::exact_decimal(std::size_t max_digits) const
{
    mpz_class den = value_.get_den();
    std::size_t twos = mpz_scan1(den.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), twos);
    std::size_t fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5) != 0) {
        mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 5);
        ++fives;
    }
    if (den != 1)
        return std::nullopt;
    const std::size_t digits = std::max(twos, fives);
    if (digits > max_digits)
        return std::nullopt;

    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class scaled = value_.get_num() * scale / value_.get_den();
    const bool negative = sgn(scaled) < 0;
    std::string body = mpz_class{ abs(scaled) }.get_str();
    if (digits == 0)
        return (negative ? "-" : "") + body;
    if (body.size() <= digits)
        body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
    return (negative ? "-" : "") + body;
}

std::string Rational::to_string() const
{
    if (auto decimal = exact_decimal())
        return *decimal;
    return fraction();
}

Rational& Rational::operator+=(const Rational& rhs)
{
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs)
{
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs)
{
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.is_zero())
        throw std::domain_error("rational division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::size_t Rational::hash() const
{
    const std::size_t h1 = std::hash<std::string>{}(value_.get_num().get_str(16));
    const std::size_t h2 = std::hash<std::string>{}(value_.get_den().get_str(16));
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::ostream& operator<<(std::ostream& out, const Rational& value)
{
    return out << value.to_string();
}

} // namespace pec
