#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "padicq/lattice.hpp"

namespace padicq::oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Tolerances shared by the oracle checks.
inline constexpr double kAlgebraicTol = 1e-10;
inline constexpr double kSpectralTol = 1e-9;
inline constexpr double kViolationTol = 1e-6;
inline constexpr double kEigenCutoff = 1e-12;
inline constexpr long kMaxDim = 343;
/// Choi matrices are dim^2 x dim^2; keep them small.
inline constexpr long kMaxChoiDim = 32;

/// Phase-space point of (Z/p^N)^2, reduced into [0, p^N).
struct FinitePoint {
    long a = 0;
    long b = 0;
    friend bool operator==(const FinitePoint&, const FinitePoint&) = default;
};

/// p^e1 Z x p^e2 Z inside (Z/p^N)^2, 0 <= e1, e2 <= N.
struct ProductSubgroup {
    int e1 = 0;
    int e2 = 0;
};

/// Finite Weyl system on functions over Z/p^N:
///
///     (W(a, b) f)(x) = exp(2 pi i (b x + half a b) / p^N) f(x + a)
///
/// with half = 2^{-1} mod p^N. Then W(z) W(z') = w^{half Delta(z, z')} W(z + z'),
/// the finite image of the CCR. The p-adic window p^{-m} Z_p^2 / p^m Z_p^2
/// (m = N / 2) is identified with (Z/p^N)^2 after scaling by p^m, so
/// diag(p^alpha, p^beta) L0 maps to p^(m+alpha) Z x p^(m+beta) Z.
class WeylSystem {
public:
    /// p odd prime, N even and positive, p^N <= kMaxDim. InputError otherwise.
    WeylSystem(long p, int n);

    long p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    long dim() const noexcept { return dim_; }
    long half() const noexcept { return half_; }
    int window() const noexcept { return n_ / 2; }

    long mod(long x) const;
    FinitePoint point(long a, long b) const { return {mod(a), mod(b)}; }
    FinitePoint neg(FinitePoint z) const { return point(-z.a, -z.b); }
    FinitePoint add(FinitePoint z, FinitePoint w) const { return point(z.a + w.a, z.b + w.b); }
    /// Delta(z, w) = z.a w.b - z.b w.a mod p^N.
    long sympl(FinitePoint z, FinitePoint w) const;
    /// exp(2 pi i k / p^N).
    Complex omega(long k) const { return omega_[static_cast<std::size_t>(mod(k))]; }

    /// Phase on row x of the monomial matrix W(z); its column is x + a.
    Complex weyl_entry(FinitePoint z, long x) const { return omega(z.b * x + half_ * mod(z.a * z.b)); }

    /// Window subgroup for diag(p^alpha, p^beta) L0; DomainError outside [-m, m].
    ProductSubgroup window_subgroup(int alpha, int beta) const;
    bool in_subgroup(FinitePoint z, ProductSubgroup s) const;
    std::vector<FinitePoint> elements(ProductSubgroup s) const;
    std::vector<FinitePoint> all_points() const;

private:
    long p_;
    int n_;
    long dim_;
    long half_;
    std::vector<Complex> omega_;
};

/// Validated state: Hermitian and unit trace within 1e-12, spectrum >= -1e-10.
class DensityMatrix {
public:
    /// Throws DomainError if an invariant fails.
    explicit DensityMatrix(Matrix m);
    const Matrix& matrix() const noexcept { return m_; }

private:
    Matrix m_;
};

Matrix weyl_op(const WeylSystem& sys, FinitePoint z);

struct CcrReport {
    double max_deviation = 0.0;
    std::uint64_t pairs_checked = 0;
    bool full_grid = false;
};
/// max ||W(z) W(z') - w^{half Delta(z, z')} W(z + z')||_op. Every pair when
/// dim <= full_grid_max_dim, otherwise `samples` seeded random pairs.
CcrReport ccr_check(const WeylSystem& sys, long full_grid_max_dim = 81, std::size_t samples = 500,
                    std::uint64_t seed = 0);
/// The same deviation computed through dense products, for a single pair.
double ccr_dense_deviation(const WeylSystem& sys, FinitePoint z, FinitePoint w);

/// p^{-N} sum_{z in S} W(-z) for S = window_subgroup(alpha, beta), conjugated
/// by W(shift). The conjugated state has characteristic function
/// w^{Delta(z, shift)} h_S(z). DomainError outside the window or when
/// alpha + beta < 0 (S not isotropic: not a state).
DensityMatrix gaussian_density(const WeylSystem& sys, int alpha, int beta, FinitePoint shift = {});

/// Tr(rho W(z)).
Complex oracle_char_fn(const WeylSystem& sys, const Matrix& rho, FinitePoint z);

/// max over z of |(1/|S|) sum_{s in S} w^{Delta(z, s)} - 1[z in S^perp]|, with
/// S^perp found from the generators of S.
double fourier_dual_check(const WeylSystem& sys, ProductSubgroup s);

/// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> spectrum(const Matrix& m);
/// -sum lambda ln lambda over eigenvalues above 1e-12.
double entropy_of(const DensityMatrix& rho);

/// p^{-N} sum_z Tr(rho W(Kz)) h_S(z) W(-z) for integer K acting mod p^N.
Matrix apply_finite_channel(const WeylSystem& sys, const std::array<long, 4>& k, ProductSubgroup noise,
                            const Matrix& rho);
/// Smallest eigenvalue of the normalized Choi matrix (1/dim) sum_ij Phi(E_ij) ⊗ E_ij.
double choi_min_eigenvalue(const WeylSystem& sys, const std::array<long, 4>& k, ProductSubgroup noise);

struct ScanInput {
    int alpha = 0;
    int beta = 0;
    double trace = 0.0;
    double min_eig = 0.0;
    std::vector<double> spectrum;
    std::optional<double> entropy_nats;
};

struct ChannelScanCase {
    Mat2 k;
    int noise_alpha = 0;
    int noise_beta = 0;
    double choi_min_eig = 0.0;
    std::vector<ScanInput> inputs;
    bool expected_predicate = false;  ///< |1 - det K|_p |L| <= 1, exact
    bool observed_valid = false;
    bool conclusive = false;
    bool agree = false;
};

/// Runs every admissible centred Gaussian input through the finite channel
/// and decides complete positivity from the Choi matrix; compares against the
/// exact channel inequality. K must have p-integral entries and nonzero
/// determinant; noise exponents must lie in the window [-m, m].
ChannelScanCase channel_validity_scan(const WeylSystem& sys, const Mat2& k, int noise_alpha, int noise_beta);

/// Runs cases in parallel; results keep the input order.
std::vector<ChannelScanCase> channel_validity_scan(const WeylSystem& sys,
                                                   const std::vector<std::pair<Mat2, std::pair<int, int>>>& grid,
                                                   unsigned workers = 0);

/// Integer channel matrices spanning both sides of the channel inequality,
/// crossed with every noise exponent pair in the window.
std::vector<std::pair<Mat2, std::pair<int, int>>> default_channel_grid(const WeylSystem& sys);

/// (alpha, beta) when L = diag(p^alpha, p^beta) L0 fits the window.
std::optional<std::pair<int, int>> window_exponents(const WeylSystem& sys, const Lattice& l);

/// Residues mod p^N of a p-integral rational matrix. InputError otherwise.
std::array<long, 4> reduce_matrix(const WeylSystem& sys, const Mat2& k);

}  // namespace padicq::oracle
