#include "padicq/lattice.hpp"

#include <array>
#include <optional>

#include "padicq/errors.hpp"

namespace padicq {

Mat2 Mat2::inverse() const {
    Rational dt = det();
    if (dt == 0) throw InputError("singular matrix " + to_string(*this));
    Rational inv = 1 / dt;
    return inv * adjugate();
}

Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

Rational sympl(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

Vec2 parse_pair(std::string_view text, std::string_view whole) {
    auto parts = split(text, ',');
    if (parts.size() != 2) throw InputError("expected two comma-separated entries in '" + std::string(whole) + "'");
    return {parse_rational(parts[0]), parse_rational(parts[1])};
}

void check_same_prime(const Lattice& l1, const Lattice& l2) {
    if (!(l1.prime() == l2.prime()))
        throw InputError("prime mismatch: " + l1.prime().value().get_str() + " vs " + l2.prime().value().get_str());
}

/// Splits a nonzero x as p^v * u with u a p-adic unit.
std::pair<long, Rational> split_unit(const Rational& x, const Prime& p) {
    long v = vp(x, p).value();
    return {v, x / prime_power(p, v)};
}

// Column reduction over Z_(p): the pivot for the first row is a generator of
// minimal first-coordinate valuation; after clearing the first row from the
// others, their second coordinates generate p^b Z_p.
Mat2 reduce_columns(std::span<const Vec2> generators, const Prime& p) {
    std::vector<Vec2> cols(generators.begin(), generators.end());
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i].x == 0) continue;
        if (!pivot || vp(cols[i].x, p) < vp(cols[*pivot].x, p)) pivot = i;
    }
    if (!pivot) throw InputError("generators do not span a rank-two lattice");
    const Vec2 top = cols[*pivot];

    std::optional<Rational> bottom;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i == *pivot) continue;
        Rational y = cols[i].y - (cols[i].x / top.x) * top.y;
        if (y == 0) continue;
        if (!bottom || vp(y, p) < vp(*bottom, p)) bottom = y;
    }
    if (!bottom) throw InputError("generators do not span a rank-two lattice");

    auto [a, unit] = split_unit(top.x, p);
    long b = vp(*bottom, p).value();
    Rational pb = prime_power(p, b);
    Rational c = top.y / unit;
    c = pb * frac_p(c / pb, p);
    return {prime_power(p, a), 0, c, pb};
}

}  // namespace

Mat2 parse_mat2(std::string_view text) {
    auto rows = split(text, ';');
    if (rows.size() != 2) throw InputError("expected matrix 'a,b;c,d', got '" + std::string(text) + "'");
    Vec2 r0 = parse_pair(rows[0], text);
    Vec2 r1 = parse_pair(rows[1], text);
    return {r0.x, r0.y, r1.x, r1.y};
}

Vec2 parse_vec2(std::string_view text) { return parse_pair(text, text); }

std::string to_string(const Mat2& m) {
    return to_string(m.a) + "," + to_string(m.b) + ";" + to_string(m.c) + "," + to_string(m.d);
}

std::string to_string(const Vec2& v) { return to_string(v.x) + "," + to_string(v.y); }

Lattice::Lattice(const Mat2& basis, Prime p) : p_(std::move(p)), basis_(basis) {
    if (basis_.det() == 0) throw InputError("singular lattice basis " + to_string(basis_));
    std::array<Vec2, 2> cols{basis_.col(0), basis_.col(1)};
    canonical_ = reduce_columns(cols, p_);
}

Lattice Lattice::from_generators(std::span<const Vec2> generators, const Prime& p) {
    return Lattice(reduce_columns(generators, p), p);
}

Rational Lattice::measure() const { return norm_p(basis_.det(), p_); }

long Lattice::measure_exponent() const { return vp(basis_.det(), p_).value(); }

Mat2 canonical_form(const Lattice& l) { return l.canonical(); }

Rational measure(const Lattice& l) { return l.measure(); }

Lattice dual(const Lattice& l) {
    return Lattice(Mat2::symplectic_j() * l.basis().inverse().transpose(), l.prime());
}

bool is_self_dual(const Lattice& l) {
    bool by_duality = (dual(l) == l);
    bool by_measure = (l.measure() == 1);
    if (by_duality != by_measure)
        throw InvariantViolation("self-duality and unit measure disagree for " + to_string(l.basis()));
    return by_duality;
}

bool contains(const Lattice& l, const Vec2& v) {
    Vec2 coords = l.canonical().inverse() * v;
    return is_p_integral(coords.x, l.prime()) && is_p_integral(coords.y, l.prime());
}

bool subset(const Lattice& l1, const Lattice& l2) {
    check_same_prime(l1, l2);
    return contains(l2, l1.canonical().col(0)) && contains(l2, l1.canonical().col(1));
}

Lattice lattice_sum(const Lattice& l1, const Lattice& l2) {
    check_same_prime(l1, l2);
    std::array<Vec2, 4> gens{l1.canonical().col(0), l1.canonical().col(1), l2.canonical().col(0),
                             l2.canonical().col(1)};
    return Lattice::from_generators(gens, l1.prime());
}

Lattice intersect(const Lattice& l1, const Lattice& l2) {
    check_same_prime(l1, l2);
    return dual(lattice_sum(dual(l1), dual(l2)));
}

Lattice scale(const Lattice& l, long n) { return Lattice(prime_power(l.prime(), n) * l.canonical(), l.prime()); }

Lattice apply_matrix(const Mat2& k, const Lattice& l) {
    if (k.det() == 0) throw InputError("singular transformation " + to_string(k));
    return Lattice(k * l.canonical(), l.prime());
}

std::pair<Vec2, Vec2> symplectic_basis(const Lattice& l) {
    if (!is_self_dual(l)) throw DomainError("symplectic basis requires a self-dual lattice");
    Vec2 u = l.canonical().col(0);
    Vec2 v = l.canonical().col(1);
    Rational pairing = sympl(u, v);
    return {u, (1 / pairing) * v};
}

SymplecticNormalForm diagonalize_symplectic(const Lattice& l) {
    // Canonical columns u = (p^a, c), v = (0, p^b) have Delta(u, v) = p^(a+b)
    // exactly, so S = [u / p^n, v] has det 1 and S diag(p^n, 1) = [u, v].
    const Mat2& canon = l.canonical();
    long n = vp(canon.det(), l.prime()).value();
    Vec2 u = canon.col(0);
    Vec2 v = canon.col(1);
    Mat2 s = Mat2::from_columns(prime_power(l.prime(), -n) * u, v);
    if (s.det() != 1) throw InvariantViolation("symplectic normal form lost det 1");
    return {s, n};
}

Mat2 transport(const Lattice& l1, const Lattice& l2) {
    check_same_prime(l1, l2);
    if (l1.measure() != l2.measure())
        throw DomainError("transport requires equal measures: " + to_string(l1.measure()) + " vs " +
                          to_string(l2.measure()));
    auto f1 = diagonalize_symplectic(l1);
    auto f2 = diagonalize_symplectic(l2);
    return f2.s * f1.s.inverse();
}

}  // namespace padicq
