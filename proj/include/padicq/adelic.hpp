#pragma once

#include <map>

#include "padicq/lattice.hpp"
#include "padicq/log_ledger.hpp"

namespace padicq {

/// Prime factorization of |n| for n != 0, as prime -> multiplicity. Small
/// factors by trial division, the rest by Pollard-Brent rho.
std::map<Integer, long> factorize(const Integer& n);

/// Gains of the Gaussian channels built from one rational K at every place.
struct AdelicGainReport {
    Rational det;
    /// sum over p of G(Phi_p), one term -vp(det) log p per prime dividing det.
    LogLedger prime_gains;
    /// G(Phi_inf) = log|det| written through the factorization of |det|.
    LogLedger real_gain;
    bool sum_is_zero = false;
};

/// Throws InputError for singular K.
AdelicGainReport adelic_report(const Mat2& k);

/// -vp(det K).
long gain_at_prime(const Mat2& k, const Prime& p);

}  // namespace padicq
