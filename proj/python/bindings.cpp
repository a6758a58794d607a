#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unital/bloch.hpp"
#include "unital/canonical.hpp"
#include "unital/channel.hpp"
#include "unital/errors.hpp"
#include "unital/json_io.hpp"
#include "unital/mixed_unitary.hpp"

namespace py = pybind11;
using namespace unital;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

template <std::size_t N>
Matrix<Complex, N> complex_matrix(const ComplexArray& a) {
    if (a.ndim() != 2 || a.shape(0) != N || a.shape(1) != N) {
        throw py::value_error("expected a " + std::to_string(N) + "x" + std::to_string(N) + " array");
    }
    Matrix<Complex, N> m;
    auto v = a.unchecked<2>();
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) m(r, c) = v(r, c);
    return m;
}

template <std::size_t N>
ComplexArray to_array(const Matrix<Complex, N>& m) {
    ComplexArray a({N, N});
    auto v = a.mutable_unchecked<2>();
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) v(r, c) = m(r, c);
    return a;
}

RealArray to_array(const RealMatrix3& m) {
    RealArray a({3, 3});
    auto v = a.mutable_unchecked<2>();
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) v(r, c) = m(r, c);
    return a;
}

RealMatrix3 real_matrix3(const RealArray& a) {
    if (a.ndim() != 2 || a.shape(0) != 3 || a.shape(1) != 3) throw py::value_error("expected a 3x3 array");
    RealMatrix3 m;
    auto v = a.unchecked<2>();
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = v(r, c);
    return m;
}

py::list unitary_list(const std::vector<ComplexMatrix2>& us) {
    py::list out;
    for (const auto& u : us) out.append(to_array(u));
    return out;
}

UnitaryDecomposition decomposition_from(const std::vector<double>& weights, const std::vector<ComplexArray>& unitaries) {
    UnitaryDecomposition d;
    d.weights.weights = weights;
    for (const auto& u : unitaries) d.unitaries.push_back(complex_matrix<2>(u));
    return d;
}

py::dict decomposition_dict(const UnitaryDecomposition& d, const QubitChannel& ch, double tol) {
    py::dict out;
    out["weights"] = d.weights.weights;
    out["unitaries"] = unitary_list(d.unitaries);
    out["residual"] = verify(d, ch, tol).residual;
    return out;
}

Vector3 vec3(const std::array<double, 3>& d) { return {d[0], d[1], d[2]}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Unital qubit channels: canonical forms, mixed-unitary decompositions and Bloch geometry.";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> base_error;
    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> majorized_error;
    base_error.call_once_and_store_result([&] { return py::object(py::exception<Error>(m, "UnitalError")); });
    majorized_error.call_once_and_store_result([&] {
        return py::object(py::exception<NotMajorizedError>(m, "NotMajorizedError", base_error.get_stored().ptr()));
    });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NotMajorizedError& e) {
            const py::object& cls = majorized_error.get_stored();
            py::object inst = cls(e.what());
            inst.attr("code") = std::string(to_string(e.code()));
            inst.attr("prefix") = e.prefix();
            inst.attr("target_sum") = e.target_sum();
            inst.attr("bound_sum") = e.bound_sum();
            py::set_error(cls, inst);
        } catch (const Error& e) {
            const py::object& cls = base_error.get_stored();
            py::object inst = cls(e.what());
            inst.attr("code") = std::string(to_string(e.code()));
            py::set_error(cls, inst);
        }
    });

    m.attr("DEFAULT_TOL") = kDefaultTol;

    py::class_<QubitChannel>(m, "Channel")
        .def_static(
            "from_kraus",
            [](const std::vector<ComplexArray>& ops) {
                std::vector<ComplexMatrix2> ks;
                for (const auto& k : ops) ks.push_back(complex_matrix<2>(k));
                return QubitChannel(KrausForm(std::move(ks)));
            },
            py::arg("operators"))
        .def_static(
            "from_choi", [](const ComplexArray& c) { return QubitChannel(ChoiForm{complex_matrix<4>(c)}); },
            py::arg("choi"))
        .def_static(
            "from_pauli", [](const std::array<double, 4>& mu) { return QubitChannel(PauliMixingForm{mu}); },
            py::arg("weights"), "Weights on (I, X, Y, Z).")
        .def_static(
            "from_bloch",
            [](const RealArray& linear, const std::array<double, 3>& offset) {
                return QubitChannel(BlochAffineForm{real_matrix3(linear), vec3(offset)});
            },
            py::arg("linear"), py::arg("offset") = std::array<double, 3>{})
        .def_static(
            "diagonal", [](const std::array<double, 3>& d) { return diagonal_bloch_channel(vec3(d)); }, py::arg("d"))
        .def_static(
            "from_json", [](const std::string& text) { return parse_channel(text); }, py::arg("text"))
        .def("to_json", &dump_channel)
        .def_property_readonly("kind",
                               [](const QubitChannel& ch) {
                                   static const char* names[] = {"kraus", "pauli", "choi", "bloch"};
                                   return std::string(names[static_cast<int>(ch.kind())]);
                               })
        .def("choi", [](const QubitChannel& ch) { return to_array(to_choi(ch).matrix); })
        .def("bloch",
             [](const QubitChannel& ch) {
                 const BlochAffineForm b = to_bloch(ch);
                 return py::make_tuple(to_array(b.linear), b.offset);
             })
        .def(
            "apply", [](const QubitChannel& ch, const ComplexArray& a) { return to_array(unital::apply(ch, complex_matrix<2>(a))); },
            py::arg("a"))
        .def(
            "spectrum", [](const QubitChannel& ch, double tol) { return choi_spectrum(ch, tol).lambdas; },
            py::arg("tol") = kDefaultTol)
        .def(
            "validate",
            [](const QubitChannel& ch, double tol) {
                const ValidationReport r = validate(ch, tol);
                py::dict out;
                out["is_channel"] = r.is_channel();
                out["hermitian_preserving"] = r.hermitian_preserving;
                out["trace_preserving"] = r.trace_preserving;
                out["unital"] = r.unital;
                out["completely_positive"] = r.completely_positive;
                out["min_choi_eigenvalue"] = r.min_choi_eigenvalue;
                return out;
            },
            py::arg("tol") = kDefaultTol)
        .def(
            "conjugate",
            [](const QubitChannel& ch, const ComplexArray& u, const ComplexArray& v) {
                return conjugate(ch, complex_matrix<2>(u), complex_matrix<2>(v));
            },
            py::arg("u"), py::arg("v"), "A -> v Phi(u A u*) v*.");

    m.def("identity_channel", &identity_channel);
    m.def("depolarizing_channel", &depolarizing_channel);
    m.def("random_unital_channel", &random_unital_channel, py::arg("seed"));
    m.def("random_unitary", [](std::uint64_t seed) { return to_array(random_unitary(seed)); }, py::arg("seed"));

    m.def(
        "canonicalize",
        [](const QubitChannel& ch, double tol) {
            const Canonicalization c = canonicalize(ch, tol);
            py::dict out;
            out["u"] = to_array(c.u);
            out["v"] = to_array(c.v);
            out["spectrum"] = c.spectrum.lambdas;
            out["canonical"] = QubitChannel(c.canonical);
            out["residual"] = c.residual;
            return out;
        },
        py::arg("channel"), py::arg("tol") = kDefaultTol);

    m.def(
        "unitarily_equivalent",
        [](const QubitChannel& a, const QubitChannel& b, double tol) {
            const EquivalenceResult e = unitarily_equivalent(a, b, tol);
            py::dict out;
            out["equivalent"] = e.equivalent;
            out["spectral_gap"] = e.spectral_gap;
            if (e.equivalent) {
                out["u"] = to_array(e.u);
                out["v"] = to_array(e.v);
                out["witness_residual"] = e.witness_residual;
            }
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTol);

    m.def(
        "average_of_four",
        [](const QubitChannel& ch, double tol) { return decomposition_dict(average_of_four(ch, tol), ch, tol); },
        py::arg("channel"), py::arg("tol") = kDefaultTol);
    m.def(
        "decompose",
        [](const QubitChannel& ch, const std::vector<double>& weights, double tol) {
            return decomposition_dict(decompose(ch, {weights}, tol), ch, tol);
        },
        py::arg("channel"), py::arg("weights"), py::arg("tol") = kDefaultTol);
    m.def(
        "verify",
        [](const std::vector<double>& weights, const std::vector<ComplexArray>& unitaries, const QubitChannel& ch,
           double tol) {
            const VerifyReport r = verify(decomposition_from(weights, unitaries), ch, tol);
            py::dict out;
            out["residual"] = r.residual;
            out["unitary_defect"] = r.unitary_defect;
            out["unitaries_ok"] = r.unitaries_ok;
            out["distribution_ok"] = r.distribution_ok;
            return out;
        },
        py::arg("weights"), py::arg("unitaries"), py::arg("channel"), py::arg("tol") = kDefaultTol);
    m.def(
        "majorizes",
        [](const std::vector<double>& u, const std::vector<double>& v, double tol) {
            const MajorizationResult r = majorizes({u}, {v}, tol);
            return py::make_tuple(r.holds, r.violated_prefix);
        },
        py::arg("u"), py::arg("v"), py::arg("tol") = kDefaultTol,
        "(holds, violated_prefix): whether u is majorized by v.");

    m.def(
        "is_channel_scaling",
        [](const std::array<double, 3>& d, double tol) {
            const ScalingTest t = is_channel_scaling({vec3(d)}, tol);
            return py::make_tuple(t.accepted, t.witnesses);
        },
        py::arg("d"), py::arg("tol") = kDefaultTol);
    m.def(
        "tetra_coordinates",
        [](const std::array<double, 3>& d, double tol) { return tetra_coordinates({vec3(d)}, tol).barycentric; },
        py::arg("d"), py::arg("tol") = kDefaultTol);
    m.def(
        "ordered_cone_test", [](const std::array<double, 3>& d, double tol) { return ordered_cone_test({vec3(d)}, tol); },
        py::arg("d"), py::arg("tol") = kDefaultTol);
    m.def(
        "scaling_equivalent",
        [](const std::array<double, 3>& a, const std::array<double, 3>& b, double tol) {
            return scaling_equivalent({vec3(a)}, {vec3(b)}, tol);
        },
        py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTol);
    m.def(
        "spectrum_from_scaling", [](const std::array<double, 3>& d) { return spectrum_from_scaling({vec3(d)}); },
        py::arg("d"), "Choi eigenvalues as weights on (I, X, Y, Z), unsorted.");
}
