#include "padicq/rational.hpp"

#include <cctype>

#include "padicq/errors.hpp"

namespace padicq {

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Prime::Prime(Integer value) : value_(std::move(value)) {
    if (!is_prime(value_)) throw InputError("not a prime: " + value_.get_str());
}

unsigned long Prime::ulong() const {
    if (!value_.fits_ulong_p()) throw InputError("prime too large for a machine word: " + value_.get_str());
    return value_.get_ui();
}

long Valuation::value() const {
    if (!value_) throw DomainError("valuation of zero is infinite");
    return *value_;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) return Valuation::infinity();
    return Valuation::finite(*a.value_ + *b.value_);
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    if (a.is_infinite()) return std::strong_ordering::greater;
    if (b.is_infinite()) return std::strong_ordering::less;
    return *a.value_ <=> *b.value_;
}

std::string Valuation::to_string() const {
    return value_ ? std::to_string(*value_) : std::string("INFINITY");
}

PhaseQ::PhaseQ(const Rational& angle) {
    // floor division on a canonical mpq: angle - floor(angle)
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), angle.get_num_mpz_t(), angle.get_den_mpz_t());
    angle_ = angle - Rational(fl);
    angle_.canonicalize();
}

long remove_factor(const Integer& n, const Integer& p, Integer* rest) {
    Integer tmp;
    auto count = mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    if (rest) *rest = tmp;
    return static_cast<long>(count);
}

Integer pow_int(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rational prime_power(const Prime& p, long e) {
    if (e >= 0) return Rational(pow_int(p.value(), static_cast<unsigned long>(e)));
    return Rational(Integer(1), pow_int(p.value(), static_cast<unsigned long>(-e)));
}

Valuation vp(const Rational& x, const Prime& p) {
    if (x == 0) return Valuation::infinity();
    long up = remove_factor(x.get_num(), p.value());
    long down = remove_factor(x.get_den(), p.value());
    return Valuation::finite(up - down);
}

Rational norm_p(const Rational& x, const Prime& p) {
    if (x == 0) return Rational(0);
    return prime_power(p, -vp(x, p).value());
}

Rational frac_p(const Rational& x, const Prime& p) {
    Integer coprime;
    long k = remove_factor(x.get_den(), p.value(), &coprime);
    if (k == 0) return Rational(0);
    // x = n / (p^k u); the answer is a / p^k with a = n u^{-1} mod p^k.
    Integer modulus = pow_int(p.value(), static_cast<unsigned long>(k));
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), coprime.get_mpz_t(), modulus.get_mpz_t()) == 0)
        throw InvariantViolation("p-coprime denominator part not invertible");
    Integer a = x.get_num() * inv;
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t());
    Rational r(a, modulus);
    r.canonicalize();
    return r;
}

PhaseQ chi(const Rational& x, const Prime& p) { return PhaseQ(frac_p(x, p)); }

bool is_p_integral(const Rational& x, const Prime& p) {
    return mpz_divisible_p(x.get_den_mpz_t(), p.value().get_mpz_t()) == 0;
}

bool is_p_unit(const Rational& x, const Prime& p) {
    return x != 0 && is_p_integral(x, p) && mpz_divisible_p(x.get_num_mpz_t(), p.value().get_mpz_t()) == 0;
}

namespace {

std::string normalize_minus(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        // U+2212 MINUS SIGN is E2 88 92 in UTF-8
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(text[i]))) out.push_back(text[i]);
    }
    return out;
}

Integer parse_integer(const std::string& s, std::string_view whole) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) throw InputError("malformed rational: '" + std::string(whole) + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw InputError("malformed rational: '" + std::string(whole) + "'");
    return Integer(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s = normalize_minus(text);
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(s, text));
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) { return x.get_str(10); }

}  // namespace padicq
