// Exact rational numbers on top of GMP.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "hypercong/error.hpp"

namespace hypercong {

using BigInt = mpz_class;

/// Arbitrary-precision rational kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) {
            throw ZeroDenominator("rational with denominator 0");
        }
        value_.get_num() = num;
        value_.get_den() = den;
        value_.canonicalize();
    }

    /// Parses "a" or "a/b" in base 10.
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) {
                return Rational(BigInt(std::string(text), 10));
            }
            return Rational(BigInt(std::string(text.substr(0, slash)), 10),
                            BigInt(std::string(text.substr(slash + 1)), 10));
        } catch (const std::invalid_argument&) {
            throw ConfigError("not a rational: '" + std::string(text) + "'");
        }
    }

    const BigInt& num() const { return value_.get_num(); }
    const BigInt& den() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return den() == 1; }
    int sign() const { return sgn(value_); }

    std::string str() const { return value_.get_str(10); }
    const mpq_class& raw() const { return value_; }

    Rational& operator+=(const Rational& rhs) {
        value_ += rhs.value_;
        return *this;
    }
    Rational& operator-=(const Rational& rhs) {
        value_ -= rhs.value_;
        return *this;
    }
    Rational& operator*=(const Rational& rhs) {
        value_ *= rhs.value_;
        return *this;
    }
    Rational& operator/=(const Rational& rhs) {
        if (rhs.is_zero()) {
            throw ZeroDenominator("division by zero");
        }
        value_ /= rhs.value_;
        return *this;
    }

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& x) {
        Rational out;
        out.value_ = -x.value_;
        return out;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    /// Wraps a numerator/denominator pair already known to be in lowest
    /// terms with positive denominator.
    static Rational from_reduced(BigInt num, BigInt den) {
        Rational out;
        out.value_.get_num() = std::move(num);
        out.value_.get_den() = std::move(den);
        return out;
    }

private:
    mpq_class value_;
};

inline Rational pow(const Rational& base, unsigned exponent) {
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), exponent);
    // Powers of coprime integers stay coprime.
    return Rational::from_reduced(std::move(num), std::move(den));
}

inline Rational inverse(const Rational& r) { return Rational(1) / r; }

}  // namespace hypercong
