#pragma once

#include <optional>

#include "padicq/lattice.hpp"
#include "padicq/log_ledger.hpp"
#include "padicq/rational.hpp"

namespace padicq {

/// gamma(L, alpha): the state with characteristic function
/// chi(Delta(alpha, z)) h_L(z). It exists iff |L| <= 1 and then equals
/// |L| P_L for a projector P_L of rank 1/|L|.
class GaussianState {
public:
    /// Throws DomainError ("not a state") when measure(L) > 1.
    explicit GaussianState(Lattice lattice, Vec2 shift = {});

    const Lattice& lattice() const noexcept { return lattice_; }
    const Vec2& shift() const noexcept { return shift_; }
    const Prime& prime() const noexcept { return lattice_.prime(); }
    /// n with |L| = p^(-n); rank of the support projector is p^n.
    long entropy_exponent() const { return lattice_.measure_exponent(); }

private:
    Lattice lattice_;
    Vec2 shift_;
};

GaussianState gaussian_state(const Lattice& l, const Vec2& shift = {});

/// pi(z) = Tr(rho W(z)). std::nullopt stands for the value zero (z not in L).
std::optional<PhaseQ> char_fn(const GaussianState& s, const Vec2& z);

/// -log|L| = n log p.
LogLedger entropy(const GaussianState& s);
bool is_pure(const GaussianState& s);
/// Equal lattice measures. Prime mismatch is an InputError.
bool unitarily_equivalent(const GaussianState& s1, const GaussianState& s2);

/// |1 - det K|_p |L| <= 1.
bool satisfies_channel_inequality(const Mat2& k, const Lattice& noise);

/// The channel pi(z) -> pi(K z) h_L(z).
class GaussianChannel {
public:
    /// Throws InputError for singular K and DomainError ("not a channel") when
    /// the inequality fails.
    GaussianChannel(Mat2 k, Lattice noise);

    const Mat2& k() const noexcept { return k_; }
    const Lattice& noise() const noexcept { return noise_; }
    const Prime& prime() const noexcept { return noise_.prime(); }

private:
    Mat2 k_;
    Lattice noise_;
};

GaussianChannel channel_new(const Mat2& k, const Lattice& noise);

/// Output gamma(K^{-1} L_s ∩ L_noise, adj(K) alpha). Throws
/// InvariantViolation if the output lattice has measure > 1.
GaussianState apply_channel(const GaussianChannel& phi, const GaussianState& s);

/// log|det K|_p as {p: -vp(det K)}.
LogLedger gain_theorem(const GaussianChannel& phi);

/// Smallest N >= 0 with p^N L ⊆ L, K^{-1} p^N L ⊆ L and |p^N L| <= 1.
long find_threshold(const GaussianChannel& phi);

/// H(Phi[gamma(p^n L)]) - H(gamma(p^n L)). Throws DomainError below the
/// threshold.
LogLedger gain_witness(const GaussianChannel& phi, long n);

/// ||Phi[I]|| = |det K|_p^{-1}. Throws InvariantViolation if -log of the
/// result does not reproduce gain_theorem.
Rational phi_identity_norm(const GaussianChannel& phi);

}  // namespace padicq
