#pragma once

// Seeded random inputs for property-style tests. Everything here is test-only.

#include <cstdint>
#include <random>
#include <vector>

#include "padicq/gaussian.hpp"
#include "padicq/lattice.hpp"

namespace padicq::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(integer(0, static_cast<long>(v.size()) - 1))]; }

    /// Nonzero integer in [1, bound] coprime to p.
    long coprime(const Prime& p, long bound = 50) {
        const long pp = static_cast<long>(p.ulong());
        while (true) {
            long v = integer(1, bound);
            if (v % pp != 0) return v;
        }
    }

    /// +-p^v * (a / b) with a, b coprime to p, v uniform in [vlo, vhi].
    Rational with_valuation(const Prime& p, long vlo, long vhi) {
        Rational r = prime_power(p, integer(vlo, vhi)) * Rational(coprime(p), coprime(p));
        r.canonicalize();
        return coin() ? r : Rational(-r);
    }

    /// Zero with probability 1/5, otherwise with_valuation.
    Rational entry(const Prime& p, long vlo, long vhi) {
        return integer(0, 4) == 0 ? Rational(0) : with_valuation(p, vlo, vhi);
    }

    /// Any rational, including ones with foreign primes in num and den.
    Rational rational(long bound = 1000) {
        Rational r(integer(-bound, bound), integer(1, bound));
        r.canonicalize();
        return r;
    }

    Mat2 basis(const Prime& p, long vlo = -4, long vhi = 4) {
        while (true) {
            Mat2 m{entry(p, vlo, vhi), entry(p, vlo, vhi), entry(p, vlo, vhi), entry(p, vlo, vhi)};
            if (m.det() != 0) return m;
        }
    }

    Lattice lattice(const Prime& p, long vlo = -4, long vhi = 4) { return Lattice(basis(p, vlo, vhi), p); }

    /// Lattice with measure <= 1 (a valid Gaussian-state support).
    Lattice state_lattice(const Prime& p, long vlo = -3, long vhi = 3) {
        while (true) {
            Lattice l = lattice(p, vlo, vhi);
            if (l.measure() <= 1) return l;
        }
    }

    /// Basis change in GL2(Z_p): p-integral entries, unit determinant.
    Mat2 unimodular(const Prime& p) {
        while (true) {
            Mat2 u{entry(p, 0, 2), entry(p, 0, 2), entry(p, 0, 2), entry(p, 0, 2)};
            if (is_p_unit(u.det(), p)) return u;
        }
    }

    /// det 1 rational matrix as a product of shears and a diagonal scaling.
    Mat2 symplectic(const Prime& p) {
        Rational t1 = entry(p, -3, 3), t2 = entry(p, -3, 3), t3 = entry(p, -3, 3);
        Rational u = with_valuation(p, -3, 3);
        Mat2 s = Mat2{1, t1, 0, 1} * Mat2{1, 0, t2, 1} * Mat2::diag(u, 1 / u) * Mat2{1, t3, 0, 1};
        return s;
    }

    /// Nondegenerate K with vp(det K) in [dlo, dhi].
    Mat2 channel_matrix(const Prime& p, long dlo = -3, long dhi = 3) {
        while (true) {
            Mat2 k{entry(p, -2, 2), entry(p, -2, 2), entry(p, -2, 2), entry(p, -2, 2)};
            Rational d = k.det();
            if (d == 0) continue;
            long v = vp(d, p).value();
            if (v >= dlo && v <= dhi) return k;
        }
    }

    /// Random valid channel: noise lattice chosen to satisfy the channel
    /// inequality for the given K.
    GaussianChannel channel(const Prime& p, long dlo = -3, long dhi = 3) {
        while (true) {
            Mat2 k = channel_matrix(p, dlo, dhi);
            Lattice l = lattice(p, -3, 3);
            if (satisfies_channel_inequality(k, l)) return GaussianChannel(k, l);
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline const std::vector<Prime>& small_primes() {
    static const std::vector<Prime> primes{Prime(2), Prime(3), Prime(5), Prime(7), Prime(11)};
    return primes;
}

}  // namespace padicq::testing
