#include "padicq/adelic.hpp"

#include <cstdint>
#include <numeric>

#include "padicq/errors.hpp"

namespace padicq {

namespace {

constexpr unsigned long kTrialBound = 1000;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 next(u64 y, u64 c, u64 m) { return static_cast<u64>((static_cast<u128>(mulmod(y, y, m)) + c) % m); }

// Brent's cycle finding with batched gcds; returns a nontrivial factor of the
// composite n or n itself when the sequence for this constant degenerates.
u64 brent64(u64 n, u64 c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 batch = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = next(y, c, n);
        for (u64 k = 0; k < r && g == 1; k += batch) {
            ys = y;
            for (u64 i = 0; i < std::min(batch, r - k); ++i) {
                y = next(y, c, n);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
        }
    }
    if (g == n) {
        do {
            ys = next(ys, c, n);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

Integer brent(const Integer& n, unsigned long c) {
    if (n.fits_ulong_p()) return Integer(static_cast<unsigned long>(brent64(n.get_ui(), c)));
    Integer y = 2, x = 2, g = 1, q = 1, ys = 2, diff;
    const unsigned long batch = 128;
    auto step = [&](Integer& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    for (unsigned long r = 1; g == 1; r <<= 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) step(y);
        for (unsigned long k = 0; k < r && g == 1; k += batch) {
            ys = y;
            for (unsigned long i = 0; i < std::min(batch, r - k); ++i) {
                step(y);
                diff = x - y;
                q *= diff;
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (g == n) {
        do {
            step(ys);
            diff = x - ys;
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void split_large(const Integer& n, std::map<Integer, long>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        split_large(root, out);
        split_large(root, out);
        return;
    }
    for (unsigned long c = 1;; ++c) {
        Integer d = brent(n, c);
        if (d != n && d != 1) {
            split_large(d, out);
            split_large(Integer(n / d), out);
            return;
        }
    }
}

}  // namespace

std::map<Integer, long> factorize(const Integer& n) {
    if (n == 0) throw InputError("cannot factor zero");
    std::map<Integer, long> out;
    Integer rest = abs(n);
    for (unsigned long d = 2; d <= kTrialBound && rest > 1; d += (d == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), d)) out[Integer(d)] = remove_factor(rest, Integer(d), &rest);
    }
    split_large(rest, out);
    return out;
}

AdelicGainReport adelic_report(const Mat2& k) {
    AdelicGainReport report;
    report.det = k.det();
    if (report.det == 0) throw InputError("singular matrix " + to_string(k));
    for (const auto& [q, e] : factorize(report.det.get_num())) {
        report.real_gain += LogLedger::single(q, e);
        report.prime_gains += LogLedger::single(q, -e);
    }
    for (const auto& [q, e] : factorize(report.det.get_den())) {
        report.real_gain += LogLedger::single(q, -e);
        report.prime_gains += LogLedger::single(q, e);
    }
    report.sum_is_zero = (report.real_gain + report.prime_gains).is_zero();
    return report;
}

long gain_at_prime(const Mat2& k, const Prime& p) {
    Rational det = k.det();
    if (det == 0) throw InputError("singular matrix " + to_string(k));
    return -vp(det, p).value();
}

}  // namespace padicq
