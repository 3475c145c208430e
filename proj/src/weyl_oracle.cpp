#include "padicq/weyl_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "padicq/errors.hpp"
#include "padicq/gaussian.hpp"

namespace padicq::oracle {

namespace {

long ipow(long base, int exp) {
    long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Plain complex product; skips the inf/nan recovery path of operator*.
inline Complex fast_mul(Complex u, Complex v) {
    return {u.real() * v.real() - u.imag() * v.imag(), u.real() * v.imag() + u.imag() * v.real()};
}

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

WeylSystem::WeylSystem(long p, int n) : p_(p), n_(n) {
    if (p < 3 || !is_prime(Integer(p))) throw InputError("Weyl oracle needs an odd prime, got " + std::to_string(p));
    if (n <= 0 || n % 2 != 0) throw InputError("Weyl oracle needs an even positive N, got " + std::to_string(n));
    dim_ = 1;
    for (int i = 0; i < n; ++i) {
        dim_ *= p;
        if (dim_ > kMaxDim) throw InputError("dimension p^N exceeds " + std::to_string(kMaxDim));
    }
    half_ = (dim_ + 1) / 2;
    omega_.resize(static_cast<std::size_t>(dim_));
    for (long k = 0; k < dim_; ++k)
        omega_[static_cast<std::size_t>(k)] =
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(dim_));
}

long WeylSystem::mod(long x) const {
    long r = x % dim_;
    return r < 0 ? r + dim_ : r;
}

long WeylSystem::sympl(FinitePoint z, FinitePoint w) const { return mod(z.a * w.b - z.b * w.a); }

ProductSubgroup WeylSystem::window_subgroup(int alpha, int beta) const {
    const int m = window();
    if (alpha < -m || alpha > m || beta < -m || beta > m)
        throw DomainError("exponents (" + std::to_string(alpha) + ", " + std::to_string(beta) +
                          ") outside the window [-" + std::to_string(m) + ", " + std::to_string(m) + "]");
    return {m + alpha, m + beta};
}

bool WeylSystem::in_subgroup(FinitePoint z, ProductSubgroup s) const {
    return z.a % ipow(p_, s.e1) == 0 && z.b % ipow(p_, s.e2) == 0;
}

std::vector<FinitePoint> WeylSystem::elements(ProductSubgroup s) const {
    std::vector<FinitePoint> out;
    const long step1 = ipow(p_, s.e1), step2 = ipow(p_, s.e2);
    for (long a = 0; a < dim_; a += step1)
        for (long b = 0; b < dim_; b += step2) out.push_back({a, b});
    return out;
}

std::vector<FinitePoint> WeylSystem::all_points() const { return elements({0, 0}); }

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DomainError("density matrix must be square");
    if (max_abs_entry(m_ - m_.adjoint()) > 1e-12) throw DomainError("density matrix is not Hermitian");
    if (std::abs(m_.trace() - Complex(1.0)) > 1e-12) throw DomainError("density matrix trace is not 1");
    auto eig = spectrum(m_);
    if (!eig.empty() && eig.front() < -1e-10) throw DomainError("density matrix has a negative eigenvalue");
}

Matrix weyl_op(const WeylSystem& sys, FinitePoint z) {
    const long q = sys.dim();
    Matrix w = Matrix::Zero(q, q);
    for (long x = 0; x < q; ++x) w(x, sys.mod(x + z.a)) = sys.weyl_entry(z, x);
    return w;
}

double ccr_dense_deviation(const WeylSystem& sys, FinitePoint z, FinitePoint w) {
    Matrix diff = weyl_op(sys, z) * weyl_op(sys, w) - sys.omega(sys.half() * sys.sympl(z, w)) * weyl_op(sys, sys.add(z, w));
    Eigen::JacobiSVD<Matrix> svd(diff);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

CcrReport ccr_check(const WeylSystem& sys, long full_grid_max_dim, std::size_t samples, std::uint64_t seed) {
    const long q = sys.dim();
    const auto points = sys.all_points();
    // Entries of every W(z); W(z) is monomial so products reduce to row-wise
    // phase products and the operator norm of a difference is its largest entry.
    std::vector<Complex> table(points.size() * static_cast<std::size_t>(q));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (long x = 0; x < q; ++x) table[i * q + x] = sys.weyl_entry(points[i], x);
    auto index = [q](FinitePoint z) { return static_cast<std::size_t>(z.a * q + z.b); };

    auto pair_deviation = [&](FinitePoint z, FinitePoint w) {
        const Complex phase = sys.omega(sys.half() * sys.sympl(z, w));
        const Complex* ez = &table[index(z) * q];
        const Complex* ew = &table[index(w) * q];
        const Complex* es = &table[index(sys.add(z, w)) * q];
        double worst = 0.0;
        for (long x = 0, xa = z.a; x < q; ++x, xa = (xa + 1 == q ? 0 : xa + 1))
            worst = std::max(worst, std::norm(fast_mul(ez[x], ew[xa]) - fast_mul(phase, es[x])));
        return std::sqrt(worst);
    };

    CcrReport report;
    if (q <= full_grid_max_dim) {
        report.full_grid = true;
        std::vector<double> per_row(points.size(), 0.0);
        parallel_for(points.size(), 0, [&](std::size_t i) {
            double worst = 0.0;
            for (const auto& w : points) worst = std::max(worst, pair_deviation(points[i], w));
            per_row[i] = worst;
        });
        report.max_deviation = *std::max_element(per_row.begin(), per_row.end());
        report.pairs_checked = static_cast<std::uint64_t>(points.size()) * points.size();
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> coord(0, q - 1);
        for (std::size_t i = 0; i < samples; ++i) {
            FinitePoint z{coord(rng), coord(rng)}, w{coord(rng), coord(rng)};
            report.max_deviation = std::max(report.max_deviation, pair_deviation(z, w));
        }
        report.pairs_checked = samples;
    }
    return report;
}

DensityMatrix gaussian_density(const WeylSystem& sys, int alpha, int beta, FinitePoint shift) {
    ProductSubgroup s = sys.window_subgroup(alpha, beta);
    if (alpha + beta < 0)
        throw DomainError("not a state: window subgroup for (" + std::to_string(alpha) + ", " + std::to_string(beta) +
                          ") is not isotropic");
    const long q = sys.dim();
    Matrix rho = Matrix::Zero(q, q);
    for (const auto& z : sys.elements(s)) {
        FinitePoint mz = sys.neg(z);
        for (long x = 0; x < q; ++x) rho(x, sys.mod(x + mz.a)) += sys.weyl_entry(mz, x);
    }
    rho /= static_cast<double>(q);
    if (shift.a != 0 || shift.b != 0) {
        Matrix w = weyl_op(sys, sys.point(shift.a, shift.b));
        rho = w * rho * w.adjoint();
    }
    return DensityMatrix(std::move(rho));
}

Complex oracle_char_fn(const WeylSystem& sys, const Matrix& rho, FinitePoint z) {
    // Tr(rho W) = sum_y rho(y + a, y) W(y, y + a)
    Complex acc = 0.0;
    for (long y = 0; y < sys.dim(); ++y) acc += rho(sys.mod(y + z.a), y) * sys.weyl_entry(z, y);
    return acc;
}

double fourier_dual_check(const WeylSystem& sys, ProductSubgroup s) {
    if (s.e1 < 0 || s.e2 < 0 || s.e1 > sys.n() || s.e2 > sys.n()) throw InputError("subgroup exponents out of range");
    const auto members = sys.elements(s);
    const FinitePoint g1 = sys.point(ipow(sys.p(), s.e1), 0);
    const FinitePoint g2 = sys.point(0, ipow(sys.p(), s.e2));
    double worst = 0.0;
    for (const auto& z : sys.all_points()) {
        Complex sum = 0.0;
        for (const auto& m : members) sum += sys.omega(sys.sympl(z, m));
        sum /= static_cast<double>(members.size());
        double indicator = (sys.sympl(z, g1) == 0 && sys.sympl(z, g2) == 0) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(sum - indicator));
    }
    return worst;
}

std::vector<double> spectrum(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

namespace {

double entropy_from_spectrum(const std::vector<double>& eig) {
    double h = 0.0;
    for (double lambda : eig)
        if (lambda > kEigenCutoff) h -= lambda * std::log(lambda);
    return h;
}

FinitePoint apply_mod(const WeylSystem& sys, const std::array<long, 4>& k, FinitePoint z) {
    return sys.point(k[0] * z.a + k[1] * z.b, k[2] * z.a + k[3] * z.b);
}

}  // namespace

double entropy_of(const DensityMatrix& rho) { return entropy_from_spectrum(spectrum(rho.matrix())); }

Matrix apply_finite_channel(const WeylSystem& sys, const std::array<long, 4>& k, ProductSubgroup noise,
                            const Matrix& rho) {
    const long q = sys.dim();
    Matrix out = Matrix::Zero(q, q);
    for (const auto& z : sys.elements(noise)) {
        Complex c = oracle_char_fn(sys, rho, apply_mod(sys, k, z));
        if (c == Complex(0.0)) continue;
        FinitePoint mz = sys.neg(z);
        for (long x = 0; x < q; ++x) out(x, sys.mod(x + mz.a)) += c * sys.weyl_entry(mz, x);
    }
    return out / static_cast<double>(q);
}

double choi_min_eigenvalue(const WeylSystem& sys, const std::array<long, 4>& k, ProductSubgroup noise) {
    const long q = sys.dim();
    if (q > kMaxChoiDim) throw InputError("Choi matrix limited to dim <= " + std::to_string(kMaxChoiDim));
    // C[(r, i), (s, j)] = Phi(E_ij)(r, s). Tr(E_ij W(w)) = W(w)(j, i), nonzero
    // only for i = j + w.a, so each z in S feeds one E_ij per j.
    Matrix choi = Matrix::Zero(q * q, q * q);
    for (const auto& z : sys.elements(noise)) {
        FinitePoint w = apply_mod(sys, k, z);
        FinitePoint mz = sys.neg(z);
        for (long j = 0; j < q; ++j) {
            long i = sys.mod(j + w.a);
            Complex c = sys.weyl_entry(w, j);
            for (long r = 0; r < q; ++r) {
                long s = sys.mod(r + mz.a);
                choi(r * q + i, s * q + j) += c * sys.weyl_entry(mz, r);
            }
        }
    }
    choi /= static_cast<double>(q * q);
    return spectrum(choi).front();
}

std::array<long, 4> reduce_matrix(const WeylSystem& sys, const Mat2& k) {
    const Prime p(sys.p());
    std::array<long, 4> out{};
    const Rational* entries[4] = {&k.a, &k.b, &k.c, &k.d};
    const Integer q(sys.dim());
    for (int i = 0; i < 4; ++i) {
        const Rational& e = *entries[i];
        if (!is_p_integral(e, p)) throw InputError("matrix entry " + to_string(e) + " is not p-integral");
        Integer inv;
        mpz_invert(inv.get_mpz_t(), e.get_den_mpz_t(), q.get_mpz_t());
        Integer r = e.get_num() * inv;
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
        out[static_cast<std::size_t>(i)] = r.get_si();
    }
    return out;
}

ChannelScanCase channel_validity_scan(const WeylSystem& sys, const Mat2& k, int noise_alpha, int noise_beta) {
    if (k.det() == 0) throw InputError("singular channel matrix " + to_string(k));
    const ProductSubgroup noise = sys.window_subgroup(noise_alpha, noise_beta);
    const auto kmod = reduce_matrix(sys, k);
    const Prime p(sys.p());

    ChannelScanCase out;
    out.k = k;
    out.noise_alpha = noise_alpha;
    out.noise_beta = noise_beta;
    out.expected_predicate =
        satisfies_channel_inequality(k, Lattice(Mat2::diag(prime_power(p, noise_alpha), prime_power(p, noise_beta)), p));
    out.choi_min_eig = choi_min_eigenvalue(sys, kmod, noise);

    const int m = sys.window();
    bool all_psd = out.choi_min_eig >= -kSpectralTol;
    bool violation = out.choi_min_eig < -kViolationTol;
    for (int alpha = -m; alpha <= m; ++alpha) {
        for (int beta = -m; beta <= m; ++beta) {
            if (alpha + beta < 0) continue;
            ScanInput in;
            in.alpha = alpha;
            in.beta = beta;
            Matrix rho_out = apply_finite_channel(sys, kmod, noise, gaussian_density(sys, alpha, beta).matrix());
            in.trace = rho_out.trace().real();
            in.spectrum = spectrum(rho_out);
            in.min_eig = in.spectrum.front();
            if (in.min_eig >= -kSpectralTol) in.entropy_nats = entropy_from_spectrum(in.spectrum);
            all_psd = all_psd && in.min_eig >= -kSpectralTol;
            violation = violation || in.min_eig < -kViolationTol;
            out.inputs.push_back(std::move(in));
        }
    }
    out.observed_valid = all_psd;
    out.conclusive = all_psd || violation;
    out.agree = out.conclusive && out.observed_valid == out.expected_predicate;
    return out;
}

std::vector<ChannelScanCase> channel_validity_scan(const WeylSystem& sys,
                                                   const std::vector<std::pair<Mat2, std::pair<int, int>>>& grid,
                                                   unsigned workers) {
    std::vector<ChannelScanCase> results(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t i) {
        results[i] = channel_validity_scan(sys, grid[i].first, grid[i].second.first, grid[i].second.second);
    });
    return results;
}

std::vector<std::pair<Mat2, std::pair<int, int>>> default_channel_grid(const WeylSystem& sys) {
    const std::vector<Mat2> ks = {
        Mat2::identity(),  Mat2::diag(2, 1),  Mat2::diag(4, 1), Mat2::diag(7, 1),  Mat2::diag(5, 1),
        Mat2::diag(3, 1),  Mat2::diag(1, 3),  Mat2::diag(3, 3), Mat2::diag(9, 1),  Mat2{1, 1, 0, 1},
        Mat2{2, 1, 1, 1},  Mat2{1, 1, 1, 4},  Mat2{2, 1, 1, 2}, Mat2{1, 2, 2, 1},  Mat2::diag(2, 2),
        Mat2::diag(1, -1),
    };
    const int m = sys.window();
    std::vector<std::pair<Mat2, std::pair<int, int>>> grid;
    for (const auto& k : ks)
        for (int a = -m; a <= m; ++a)
            for (int b = -m; b <= m; ++b) grid.push_back({k, {a, b}});
    return grid;
}

std::optional<std::pair<int, int>> window_exponents(const WeylSystem& sys, const Lattice& l) {
    if (l.prime().value() != sys.p()) return std::nullopt;
    const Mat2& c = l.canonical();
    if (c.c != 0) return std::nullopt;
    const long alpha = vp(c.a, l.prime()).value();
    const long beta = vp(c.d, l.prime()).value();
    const int m = sys.window();
    if (alpha < -m || alpha > m || beta < -m || beta > m) return std::nullopt;
    return std::pair<int, int>(static_cast<int>(alpha), static_cast<int>(beta));
}

}  // namespace padicq::oracle
