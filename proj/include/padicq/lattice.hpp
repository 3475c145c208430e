#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "padicq/rational.hpp"

namespace padicq {

struct Vec2 {
    Rational x{0};
    Rational y{0};

    friend Vec2 operator+(const Vec2& u, const Vec2& v) { return {u.x + v.x, u.y + v.y}; }
    friend Vec2 operator-(const Vec2& u, const Vec2& v) { return {u.x - v.x, u.y - v.y}; }
    friend Vec2 operator*(const Rational& s, const Vec2& v) { return {s * v.x, s * v.y}; }
    friend bool operator==(const Vec2& u, const Vec2& v) { return u.x == v.x && u.y == v.y; }
};

/// Row-major 2x2 rational matrix [[a, b], [c, d]]. Columns are lattice
/// generators wherever a Mat2 is used as a basis.
struct Mat2 {
    Rational a{0}, b{0}, c{0}, d{0};

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 diag(const Rational& x, const Rational& y) { return {x, 0, 0, y}; }
    static Mat2 from_columns(const Vec2& c0, const Vec2& c1) { return {c0.x, c1.x, c0.y, c1.y}; }
    /// The standard symplectic matrix J = [[0, 1], [-1, 0]].
    static Mat2 symplectic_j() { return {0, 1, -1, 0}; }

    Rational det() const { return a * d - b * c; }
    Mat2 transpose() const { return {a, c, b, d}; }
    /// adj(K) with K adj(K) = det(K) I.
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    /// Throws InputError when singular.
    Mat2 inverse() const;
    Vec2 col(int j) const { return j == 0 ? Vec2{a, c} : Vec2{b, d}; }

    friend Mat2 operator*(const Mat2& m, const Mat2& n);
    friend Vec2 operator*(const Mat2& m, const Vec2& v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
    friend Mat2 operator*(const Rational& s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
    friend bool operator==(const Mat2& m, const Mat2& n) {
        return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
    }
};

/// Delta(u, v) = u^T J v = u.x v.y - u.y v.x.
Rational sympl(const Vec2& u, const Vec2& v);

// "a,b;c,d" and "x,y".
Mat2 parse_mat2(std::string_view text);
Vec2 parse_vec2(std::string_view text);
std::string to_string(const Mat2& m);
std::string to_string(const Vec2& v);

/// A rank-two Z_p-module inside Q_p^2, spanned by the columns of a rational
/// basis. The canonical basis is computed at construction:
///
///     [[p^a, 0], [c, p^b]]
///
/// with c = p^b * frac_p(c / p^b), so two lattices are equal iff their primes
/// and canonical bases agree entrywise.
class Lattice {
public:
    /// Throws InputError when the basis is singular.
    Lattice(const Mat2& basis, Prime p);

    /// The Z_p-span of arbitrary generators; throws InputError below rank two.
    static Lattice from_generators(std::span<const Vec2> generators, const Prime& p);
    /// Z_p e1 + Z_p e2.
    static Lattice standard(const Prime& p) { return Lattice(Mat2::identity(), p); }

    const Prime& prime() const noexcept { return p_; }
    const Mat2& basis() const noexcept { return basis_; }
    const Mat2& canonical() const noexcept { return canonical_; }

    /// Normalized Haar measure |det B|_p; self-dual lattices have measure 1.
    Rational measure() const;
    /// The exponent n with measure = p^(-n).
    long measure_exponent() const;

    friend bool operator==(const Lattice& l1, const Lattice& l2) {
        return l1.p_ == l2.p_ && l1.canonical_ == l2.canonical_;
    }

private:
    Prime p_;
    Mat2 basis_;
    Mat2 canonical_;
};

Mat2 canonical_form(const Lattice& l);
Rational measure(const Lattice& l);

/// {u : Delta(u, v) in Z_p for all v in L}, with basis J B^{-T}.
Lattice dual(const Lattice& l);
/// L == L*. Cross-checks the measure criterion and throws InvariantViolation
/// if the two disagree.
bool is_self_dual(const Lattice& l);

bool contains(const Lattice& l, const Vec2& v);
/// l1 is a subset of l2. Prime mismatch is an InputError.
bool subset(const Lattice& l1, const Lattice& l2);

Lattice lattice_sum(const Lattice& l1, const Lattice& l2);
/// Computed as dual(dual(l1) + dual(l2)).
Lattice intersect(const Lattice& l1, const Lattice& l2);

/// p^n L. Measure scales by p^(-2n) (two coordinates each scaled by |p^n|_p).
Lattice scale(const Lattice& l, long n);
/// K L; throws InputError when K is singular.
Lattice apply_matrix(const Mat2& k, const Lattice& l);

/// (e1, e2) with Delta(e1, e2) = 1 spanning a self-dual L. Throws DomainError
/// otherwise.
std::pair<Vec2, Vec2> symplectic_basis(const Lattice& l);

struct SymplecticNormalForm {
    Mat2 s;      ///< det s == 1
    long n = 0;  ///< L = s * diag(p^n, 1) * L0, measure(L) = p^(-n)
};
SymplecticNormalForm diagonalize_symplectic(const Lattice& l);

/// S with det S = 1 and S l1 = l2. Throws DomainError on unequal measures.
Mat2 transport(const Lattice& l1, const Lattice& l2);

}  // namespace padicq
