#include "padicq/gaussian.hpp"

#include "padicq/errors.hpp"

namespace padicq {

GaussianState::GaussianState(Lattice lattice, Vec2 shift) : lattice_(std::move(lattice)), shift_(std::move(shift)) {
    if (lattice_.measure() > 1)
        throw DomainError("not a state: lattice measure " + to_string(lattice_.measure()) + " exceeds 1");
}

GaussianState gaussian_state(const Lattice& l, const Vec2& shift) { return GaussianState(l, shift); }

std::optional<PhaseQ> char_fn(const GaussianState& s, const Vec2& z) {
    if (!contains(s.lattice(), z)) return std::nullopt;
    return chi(sympl(s.shift(), z), s.prime());
}

LogLedger entropy(const GaussianState& s) { return LogLedger::single(s.prime().value(), s.entropy_exponent()); }

bool is_pure(const GaussianState& s) { return is_self_dual(s.lattice()); }

bool unitarily_equivalent(const GaussianState& s1, const GaussianState& s2) {
    if (!(s1.prime() == s2.prime())) throw InputError("prime mismatch between states");
    return s1.lattice().measure() == s2.lattice().measure();
}

bool satisfies_channel_inequality(const Mat2& k, const Lattice& noise) {
    return norm_p(1 - k.det(), noise.prime()) * noise.measure() <= 1;
}

GaussianChannel::GaussianChannel(Mat2 k, Lattice noise) : k_(std::move(k)), noise_(std::move(noise)) {
    if (k_.det() == 0) throw InputError("singular channel matrix " + to_string(k_));
    if (!satisfies_channel_inequality(k_, noise_))
        throw DomainError("not a channel: |1 - det K|_p |L| = " +
                          to_string(norm_p(1 - k_.det(), prime()) * noise_.measure()) + " > 1");
}

GaussianChannel channel_new(const Mat2& k, const Lattice& noise) { return GaussianChannel(k, noise); }

GaussianState apply_channel(const GaussianChannel& phi, const GaussianState& s) {
    if (!(phi.prime() == s.prime())) throw InputError("prime mismatch between channel and state");
    // pi(Kz) h_L(z) = chi(Delta(alpha, Kz)) h_{K^{-1} L_s}(z) h_L(z), and
    // Delta(alpha, Kz) = Delta(adj(K) alpha, z) since K^T J K = det(K) J.
    Lattice out = intersect(apply_matrix(phi.k().inverse(), s.lattice()), phi.noise());
    if (out.measure() > 1)
        throw InvariantViolation("channel output has measure " + to_string(out.measure()) + " > 1");
    return GaussianState(std::move(out), phi.k().adjugate() * s.shift());
}

LogLedger gain_theorem(const GaussianChannel& phi) {
    return LogLedger::single(phi.prime().value(), -vp(phi.k().det(), phi.prime()).value());
}

long find_threshold(const GaussianChannel& phi) {
    const Lattice& l = phi.noise();
    const Mat2 k_inv = phi.k().inverse();
    for (long n = 0;; ++n) {
        Lattice ln = scale(l, n);
        if (subset(ln, l) && subset(apply_matrix(k_inv, ln), l) && ln.measure() <= 1) return n;
    }
}

LogLedger gain_witness(const GaussianChannel& phi, long n) {
    long threshold = find_threshold(phi);
    if (n < threshold)
        throw DomainError("witness index " + std::to_string(n) + " below threshold " + std::to_string(threshold));
    GaussianState input(scale(phi.noise(), n));
    GaussianState output = apply_channel(phi, input);
    return entropy(output) - entropy(input);
}

Rational phi_identity_norm(const GaussianChannel& phi) {
    Rational norm = 1 / norm_p(phi.k().det(), phi.prime());
    if (-LogLedger::of_prime_power(norm, phi.prime()) != gain_theorem(phi))
        throw InvariantViolation("-log ||Phi[I]|| disagrees with the gain formula");
    return norm;
}

}  // namespace padicq
