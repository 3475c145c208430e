#pragma once

#include <map>
#include <string>

#include "padicq/rational.hpp"

namespace padicq {

/// Exact logarithm: the formal sum of e_q * log q over primes q. Zero
/// exponents are never stored, so the empty ledger is the value 0.
class LogLedger {
public:
    using Terms = std::map<Integer, long>;

    LogLedger() = default;
    static LogLedger single(const Integer& prime, long exponent);
    /// log x for x = +-p^e; throws DomainError for anything else.
    static LogLedger of_prime_power(const Rational& x, const Prime& p);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    long exponent(const Integer& prime) const;

    LogLedger& operator+=(const LogLedger& other);
    LogLedger& operator-=(const LogLedger& other);
    friend LogLedger operator+(LogLedger a, const LogLedger& b) { return a += b; }
    friend LogLedger operator-(LogLedger a, const LogLedger& b) { return a -= b; }
    friend LogLedger operator-(const LogLedger& a) { return LogLedger() - a; }
    friend bool operator==(const LogLedger& a, const LogLedger& b) = default;

    /// Numerical value in the given log base (e when base <= 0). Rendering only.
    double value(double base = 0.0) const;
    /// "-1·ln 3 + 2·ln 5"; "0" when empty. base_label is "e", "2" or "10".
    std::string render(const std::string& base_label = "e") const;

private:
    void add(const Integer& prime, long exponent);
    Terms terms_;
};

}  // namespace padicq
