// Python bindings. Rationals cross the boundary as fractions.Fraction (ints
// and "a/b" strings are accepted on input); oracle matrices as numpy arrays.

#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padicq/adelic.hpp"
#include "padicq/cli.hpp"
#include "padicq/errors.hpp"
#include "padicq/gaussian.hpp"
#include "padicq/weyl_oracle.hpp"

namespace py = pybind11;
using namespace padicq;

namespace {

py::object big_int(const Integer& n) {
    const std::string s = n.get_str();
    return py::reinterpret_steal<py::object>(PyLong_FromString(s.c_str(), nullptr, 10));
}

py::object fraction(const Rational& r) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(big_int(r.get_num()), big_int(r.get_den()));
}

Rational rational(const py::handle& h) {
    if (py::isinstance<py::float_>(h)) throw InputError("floats are not exact; pass an int, Fraction or 'a/b' string");
    return parse_rational(py::str(h).cast<std::string>());
}

Prime prime(const py::handle& h) { return Prime(Integer(py::str(h).cast<std::string>())); }

Mat2 matrix(const py::handle& h) {
    if (py::isinstance<py::str>(h)) return parse_mat2(h.cast<std::string>());
    auto rows = h.cast<py::sequence>();
    if (rows.size() != 2) throw InputError("matrix must have two rows");
    auto r0 = rows[0].cast<py::sequence>(), r1 = rows[1].cast<py::sequence>();
    if (r0.size() != 2 || r1.size() != 2) throw InputError("matrix rows must have two entries");
    return Mat2{rational(r0[0]), rational(r0[1]), rational(r1[0]), rational(r1[1])};
}

Vec2 vec(const py::handle& h) {
    if (h.is_none()) return {};
    if (py::isinstance<py::str>(h)) return parse_vec2(h.cast<std::string>());
    auto s = h.cast<py::sequence>();
    if (s.size() != 2) throw InputError("vector must have two entries");
    return {rational(s[0]), rational(s[1])};
}

py::list to_py(const Mat2& m) {
    py::list out;
    out.append(py::make_tuple(fraction(m.a), fraction(m.b)));
    out.append(py::make_tuple(fraction(m.c), fraction(m.d)));
    return out;
}

py::tuple to_py(const Vec2& v) { return py::make_tuple(fraction(v.x), fraction(v.y)); }

py::dict to_py(const LogLedger& l) {
    py::dict d;
    for (const auto& [q, e] : l.terms()) d[big_int(q)] = e;
    return d;
}

}  // namespace

PYBIND11_MODULE(padicq, m) {
    m.doc() = "Exact p-adic lattice geometry, Gaussian channels, entropy-gain ledgers and a finite Weyl-system oracle";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

    m.def("vp", [](const py::object& x, const py::object& p) -> py::object {
        Valuation v = vp(rational(x), prime(p));
        return v.is_infinite() ? py::object(py::float_(INFINITY)) : py::object(py::int_(v.value()));
    }, py::arg("x"), py::arg("p"), "p-adic valuation; inf for zero");
    m.def("norm_p", [](const py::object& x, const py::object& p) { return fraction(norm_p(rational(x), prime(p))); },
          py::arg("x"), py::arg("p"));
    m.def("frac_p", [](const py::object& x, const py::object& p) { return fraction(frac_p(rational(x), prime(p))); },
          py::arg("x"), py::arg("p"));

    py::class_<Lattice>(m, "Lattice")
        .def(py::init([](const py::object& basis, const py::object& p) { return Lattice(matrix(basis), prime(p)); }),
             py::arg("basis"), py::arg("p"), "Z_p-span of the columns of basis")
        .def_static("standard", [](const py::object& p) { return Lattice::standard(prime(p)); }, py::arg("p"))
        .def_property_readonly("prime", [](const Lattice& l) { return big_int(l.prime().value()); })
        .def_property_readonly("basis", [](const Lattice& l) { return to_py(l.basis()); })
        .def_property_readonly("canonical", [](const Lattice& l) { return to_py(l.canonical()); })
        .def_property_readonly("measure", [](const Lattice& l) { return fraction(l.measure()); })
        .def("dual", [](const Lattice& l) { return dual(l); })
        .def("is_self_dual", [](const Lattice& l) { return is_self_dual(l); })
        .def("contains", [](const Lattice& l, const py::object& v) { return contains(l, vec(v)); }, py::arg("v"))
        .def("issubset", [](const Lattice& a, const Lattice& b) { return subset(a, b); }, py::arg("other"))
        .def("intersect", [](const Lattice& a, const Lattice& b) { return intersect(a, b); }, py::arg("other"))
        .def("__add__", [](const Lattice& a, const Lattice& b) { return lattice_sum(a, b); })
        .def("scale", [](const Lattice& l, long n) { return scale(l, n); }, py::arg("n"))
        .def("apply", [](const Lattice& l, const py::object& k) { return apply_matrix(matrix(k), l); }, py::arg("k"))
        .def("__eq__", [](const Lattice& a, const Lattice& b) { return a == b; })
        .def("__repr__", [](const Lattice& l) {
            return "Lattice('" + to_string(l.canonical()) + "', p=" + l.prime().value().get_str() + ")";
        });

    py::class_<GaussianState>(m, "GaussianState")
        .def(py::init([](const Lattice& l, const py::object& shift) { return GaussianState(l, vec(shift)); }),
             py::arg("lattice"), py::arg("shift") = py::none())
        .def_property_readonly("lattice", &GaussianState::lattice)
        .def_property_readonly("shift", [](const GaussianState& s) { return to_py(s.shift()); })
        .def_property_readonly("entropy", [](const GaussianState& s) { return to_py(entropy(s)); },
                               "prime -> exponent; the entropy is sum(e * log(q))")
        .def_property_readonly("entropy_nats", [](const GaussianState& s) { return entropy(s).value(); })
        .def("is_pure", [](const GaussianState& s) { return is_pure(s); })
        .def("char_fn", [](const GaussianState& s, const py::object& z) -> py::object {
            auto phase = char_fn(s, vec(z));
            return phase ? fraction(phase->angle()) : py::object(py::none());
        }, py::arg("z"), "Phase angle in [0, 1), or None where the function vanishes")
        .def("equivalent", [](const GaussianState& a, const GaussianState& b) { return unitarily_equivalent(a, b); });

    py::class_<GaussianChannel>(m, "GaussianChannel")
        .def(py::init([](const py::object& k, const Lattice& noise) { return GaussianChannel(matrix(k), noise); }),
             py::arg("k"), py::arg("noise"))
        .def_property_readonly("k", [](const GaussianChannel& c) { return to_py(c.k()); })
        .def_property_readonly("noise", &GaussianChannel::noise)
        .def("apply", [](const GaussianChannel& c, const GaussianState& s) { return apply_channel(c, s); })
        .def("gain", [](const GaussianChannel& c) { return to_py(gain_theorem(c)); })
        .def("threshold", [](const GaussianChannel& c) { return find_threshold(c); })
        .def("witness", [](const GaussianChannel& c, long n) { return to_py(gain_witness(c, n)); }, py::arg("n"))
        .def("identity_norm", [](const GaussianChannel& c) { return fraction(phi_identity_norm(c)); });

    m.def("channel_is_valid", [](const py::object& k, const Lattice& noise) {
        return satisfies_channel_inequality(matrix(k), noise);
    }, py::arg("k"), py::arg("noise"));

    m.def("factorize", [](const py::object& n) {
        py::dict d;
        for (const auto& [q, e] : factorize(Integer(py::str(n).cast<std::string>()))) d[big_int(q)] = e;
        return d;
    }, py::arg("n"));

    m.def("adelic_report", [](const py::object& k) {
        AdelicGainReport r = adelic_report(matrix(k));
        py::dict d;
        d["det"] = fraction(r.det);
        d["primes"] = to_py(r.prime_gains);
        d["real"] = to_py(r.real_gain);
        d["sum_is_zero"] = r.sum_is_zero;
        return d;
    }, py::arg("k"));

    m.def("cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command-line front end in-process; returns (exit_code, stdout, stderr)");

    auto o = m.def_submodule("oracle", "Finite Weyl-system oracle");
    using namespace padicq::oracle;
    py::class_<WeylSystem>(o, "WeylSystem")
        .def(py::init<long, int>(), py::arg("p"), py::arg("n"))
        .def_property_readonly("p", &WeylSystem::p)
        .def_property_readonly("n", &WeylSystem::n)
        .def_property_readonly("dim", &WeylSystem::dim)
        .def_property_readonly("half", &WeylSystem::half)
        .def_property_readonly("window", &WeylSystem::window);

    o.def("weyl_op", [](const WeylSystem& s, long a, long b) { return weyl_op(s, s.point(a, b)); },
          py::arg("sys"), py::arg("a"), py::arg("b"));
    o.def("gaussian_density", [](const WeylSystem& s, int alpha, int beta, long sa, long sb) {
        return gaussian_density(s, alpha, beta, s.point(sa, sb)).matrix();
    }, py::arg("sys"), py::arg("alpha"), py::arg("beta"), py::arg("shift_a") = 0, py::arg("shift_b") = 0);
    o.def("char_fn", [](const WeylSystem& s, const Matrix& rho, long a, long b) {
        return oracle_char_fn(s, rho, s.point(a, b));
    }, py::arg("sys"), py::arg("rho"), py::arg("a"), py::arg("b"));
    o.def("spectrum", [](const Matrix& rho) { return spectrum(rho); }, py::arg("rho"));
    o.def("entropy", [](const Matrix& rho) { return entropy_of(DensityMatrix(rho)); }, py::arg("rho"),
          "von Neumann entropy in nats; rejects matrices that are not states");
    o.def("ccr_check", [](const WeylSystem& s, long full_grid_max_dim, std::size_t samples, std::uint64_t seed) {
        CcrReport r = ccr_check(s, full_grid_max_dim, samples, seed);
        py::dict d;
        d["max_deviation"] = r.max_deviation;
        d["pairs_checked"] = r.pairs_checked;
        d["full_grid"] = r.full_grid;
        return d;
    }, py::arg("sys"), py::arg("full_grid_max_dim") = 81, py::arg("samples") = 500, py::arg("seed") = 0);
    o.def("fourier_dual_check", [](const WeylSystem& s, int e1, int e2) { return fourier_dual_check(s, {e1, e2}); },
          py::arg("sys"), py::arg("e1"), py::arg("e2"));
    o.def("channel_scan", [](const WeylSystem& s, const py::object& k, int na, int nb) {
        ChannelScanCase c = channel_validity_scan(s, matrix(k), na, nb);
        py::dict d;
        d["expected_valid"] = c.expected_predicate;
        d["observed_valid"] = c.observed_valid;
        d["choi_min_eig"] = c.choi_min_eig;
        d["agree"] = c.agree;
        return d;
    }, py::arg("sys"), py::arg("k"), py::arg("noise_alpha"), py::arg("noise_beta"));
}
