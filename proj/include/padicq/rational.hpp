#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace padicq {

using Integer = mpz_class;
using Rational = mpq_class;

/// A validated prime. Construction fails with InputError on anything else.
class Prime {
public:
    explicit Prime(Integer value);
    explicit Prime(long value) : Prime(Integer(value)) {}

    const Integer& value() const noexcept { return value_; }
    /// Fits-in-unsigned-long view; throws InputError for huge primes.
    unsigned long ulong() const;

    friend bool operator==(const Prime& a, const Prime& b) { return a.value_ == b.value_; }

private:
    Integer value_;
};

bool is_prime(const Integer& n);

/// p-adic valuation. The infinite value is reserved for zero and compares
/// greater than every finite valuation.
class Valuation {
public:
    static Valuation finite(long v) { return Valuation(v); }
    static Valuation infinity() { return Valuation(); }

    bool is_infinite() const noexcept { return !value_.has_value(); }
    /// Throws DomainError on infinity.
    long value() const;

    friend Valuation operator+(const Valuation& a, const Valuation& b);
    friend bool operator==(const Valuation& a, const Valuation& b) = default;
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);

    std::string to_string() const;

private:
    Valuation() = default;
    explicit Valuation(long v) : value_(v) {}
    std::optional<long> value_;
};

/// Character value exp(2 pi i angle) with angle a rational in [0, 1).
class PhaseQ {
public:
    PhaseQ() = default;
    /// Reduces the angle modulo 1.
    explicit PhaseQ(const Rational& angle);

    const Rational& angle() const noexcept { return angle_; }
    bool is_one() const { return angle_ == 0; }

    friend PhaseQ operator*(const PhaseQ& a, const PhaseQ& b) { return PhaseQ(a.angle_ + b.angle_); }
    friend bool operator==(const PhaseQ& a, const PhaseQ& b) { return a.angle_ == b.angle_; }

private:
    Rational angle_{0};
};

// Integer helpers.

/// Exponent of p in n (n != 0); strips that power from n when `rest` is given.
long remove_factor(const Integer& n, const Integer& p, Integer* rest = nullptr);
Integer pow_int(const Integer& base, unsigned long exp);
/// p^e as an exact rational; e may be negative.
Rational prime_power(const Prime& p, long e);

// p-adic primitives.

Valuation vp(const Rational& x, const Prime& p);
/// p^(-vp(x)); zero for x = 0.
Rational norm_p(const Rational& x, const Prime& p);
/// The p-adic fractional part: r in [0, 1) with p-power denominator and
/// x - r a p-adic integer.
Rational frac_p(const Rational& x, const Prime& p);
/// The additive character chi(x) = exp(2 pi i {x}_p).
PhaseQ chi(const Rational& x, const Prime& p);

/// True iff vp(x) >= 0 (zero included).
bool is_p_integral(const Rational& x, const Prime& p);
/// True iff vp(x) == 0.
bool is_p_unit(const Rational& x, const Prime& p);

// Text format: "num/den" or "num". Accepts ASCII '-' and U+2212.

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);

}  // namespace padicq
