#include "cmx/config.hpp"
#include "cmx/contact.hpp"
#include "cmx/dec.hpp"
#include "cmx/dynamics.hpp"
#include "cmx/fiber.hpp"
#include "cmx/infogeom.hpp"
#include "cmx/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cmx;

namespace {

py::array_t<double> component_array(const FormField& f, int c) {
    const auto& d = f.mesh().dims();
    py::array_t<double> out({d[0], d[1], d[2]});
    std::copy(f[c].begin(), f[c].end(), out.mutable_data());
    return out;
}

void set_component(FormField& f, int c, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    const auto& d = f.mesh().dims();
    if (a.ndim() != 3 || a.shape(0) != d[0] || a.shape(1) != d[1] || a.shape(2) != d[2])
        throw std::invalid_argument("component shape does not match the mesh");
    if (c < 0 || c >= f.components()) throw std::out_of_range("component index");
    std::copy(a.data(), a.data() + a.size(), f[c].begin());
}

py::dict report_dict(const DiagnosticsReport& r) {
    py::dict d;
    d["time"] = r.time;
    d["psi_total"] = r.psi_total;
    d["phi_total"] = r.phi_total;
    d["div_D_max"] = r.div_D_max;
    d["div_B_max"] = r.div_B_max;
    d["constitutive_residual_max"] = r.constitutive_residual_max;
    d["energy_residual_max"] = r.energy_residual_max;
    d["hamiltonian_functional"] = r.hamiltonian_functional;
    d["poynting_balance_residual"] = r.poynting_balance_residual;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Contact-geometric Maxwell solver and fiber information geometry";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NonFiniteError>(m, "NonFiniteError", PyExc_FloatingPointError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::enum_<GeneratorKind>(m, "GeneratorKind")
        .value("XType", GeneratorKind::XType)
        .value("PType", GeneratorKind::PType);

    py::class_<ContactPoint>(m, "ContactPoint")
        .def(py::init<Vec, Vec, double>(), py::arg("x"), py::arg("p"), py::arg("z"))
        .def_readwrite("x", &ContactPoint::x)
        .def_readwrite("p", &ContactPoint::p)
        .def_readwrite("z", &ContactPoint::z)
        .def("__repr__", [](const ContactPoint& c) { return "<ContactPoint n=" + std::to_string(c.dim()) + ">"; });

    py::class_<Tangent>(m, "Tangent")
        .def_readonly("dx", &Tangent::dx)
        .def_readonly("dp", &Tangent::dp)
        .def_readonly("dz", &Tangent::dz);

    m.def("contact_form", &eval_contact_form, py::arg("point"), py::arg("vector"));
    m.def("reeb_field", &reeb_field, py::arg("n"));
    m.def(
        "contact_hamiltonian_field",
        [](std::function<double(const Vec&, const Vec&, double)> h, const ContactPoint& pt) {
            const auto fn = with_fd_gradient([h](const ContactPoint& c) { return h(c.x, c.p, c.z); });
            return contact_hamiltonian_field(fn, pt);
        },
        py::arg("h"), py::arg("point"),
        "Field of h(x, p, z) with finite-difference partial derivatives.");

    m.def(
        "legendre_quadratic",
        [](const Vec& coeffs, const Vec& p) {
            if (coeffs.size() != p.size()) throw std::invalid_argument("coefficient and p lengths differ");
            const Mat A = coeffs.asDiagonal();
            const LegendreResult r = legendre_transform(quadratic_generator(GeneratorKind::XType, A), p);
            return py::make_tuple(r.value, r.argmax);
        },
        py::arg("coeffs"), py::arg("p"), "sup_x [x.p - sum c_i x_i^2 / 2], returned as (value, argmax).");
    m.def(
        "legendre_transform",
        [](std::function<double(const Vec&)> f, std::function<Vec(const Vec&)> grad, std::function<Mat(const Vec&)> hess,
           const Vec& p, GeneratorKind kind, bool strictly_convex) {
            Generator g;
            g.kind = kind;
            g.n = static_cast<int>(p.size());
            g.value = std::move(f);
            g.gradient = std::move(grad);
            g.hessian = std::move(hess);
            g.strictly_convex = strictly_convex;
            const LegendreResult r = legendre_transform(g, p);
            return py::make_tuple(r.value, r.argmax);
        },
        py::arg("f"), py::arg("gradient"), py::arg("hessian"), py::arg("p"), py::arg("kind") = GeneratorKind::XType,
        py::arg("strictly_convex") = true);

    m.def(
        "integrate_flow",
        [](std::function<double(const Vec&, const Vec&, double)> h, const ContactPoint& start, double dt, int steps) {
            const auto fn = with_fd_gradient([h](const ContactPoint& c) { return h(c.x, c.p, c.z); });
            return integrate_flow(hamiltonian_source(fn), start, dt, steps);
        },
        py::arg("h"), py::arg("start"), py::arg("dt"), py::arg("steps"));

    py::enum_<Grid>(m, "Grid").value("Primal", Grid::Primal).value("Dual", Grid::Dual);

    py::class_<Mesh>(m, "Mesh")
        .def(py::init<std::array<int, 3>, double>(), py::arg("dims"), py::arg("spacing"))
        .def_property_readonly("dims", &Mesh::dims)
        .def_property_readonly("spacing", &Mesh::spacing);

    py::class_<FormField>(m, "Form")
        .def(py::init<Mesh, int, Grid>(), py::arg("mesh"), py::arg("degree"), py::arg("grid") = Grid::Primal)
        .def_property_readonly("degree", &FormField::degree)
        .def_property_readonly("grid", &FormField::grid)
        .def_property_readonly("components", &FormField::components)
        .def("component", &component_array, py::arg("index"))
        .def("set_component", &set_component, py::arg("index"), py::arg("values"))
        .def("max_abs", &FormField::max_abs)
        .def("__eq__", [](const FormField& a, const FormField& b) { return a == b; });

    m.def("d", &exterior_derivative, py::arg("form"));
    m.def("star", &hodge_star, py::arg("form"));
    m.def("wedge", py::overload_cast<const FormField&, const FormField&>(&wedge), py::arg("a"), py::arg("b"));
    m.def("integrate", [](const FormField& f) { return integrate(f); }, py::arg("form"));

    m.def("fiber_metric", &fiber_metric, py::arg("eps"), py::arg("mu"));
    m.def("contravariant_metric", &contravariant_metric, py::arg("eps"), py::arg("mu"));

    py::class_<FiberPoint>(m, "FiberPoint")
        .def_static("from_induction", &FiberPoint::from_induction, py::arg("x"), py::arg("eps"), py::arg("mu"))
        .def_static("from_intensity", &FiberPoint::from_intensity, py::arg("p"), py::arg("eps"), py::arg("mu"))
        .def_readonly("x", &FiberPoint::x)
        .def_readonly("p", &FiberPoint::p)
        .def_readonly("eps", &FiberPoint::eps)
        .def_readonly("mu", &FiberPoint::mu);

    m.def("canonical_divergence", &canonical_divergence, py::arg("a"), py::arg("b"));
    m.def(
        "pythagoras",
        [](const FiberPoint& a, const FiberPoint& b, const FiberPoint& c) {
            const PythagorasResult r = pythagoras_check(a, b, c);
            return py::make_tuple(r.lhs, r.rhs, r.orthogonality_defect);
        },
        py::arg("xi3"), py::arg("xi2"), py::arg("xi1"));

    m.def(
        "simulate",
        [](const std::string& config_text) {
            const Scenario sc = build_scenario(parse_config(config_text));
            ScenarioResult r;
            {
                py::gil_scoped_release release;
                r = run_scenario(sc.initial, sc.medium, sc.scheme);
            }
            py::list series;
            for (const auto& rep : r.series) series.append(report_dict(rep));
            return series;
        },
        py::arg("config_text"), "Runs a scenario from config text and returns its diagnostic series.");

    m.def("suite_names", &suite_names);
    m.def(
        "verify",
        [](int id, std::uint64_t seed) {
            VerifyOptions o;
            o.seed = seed;
            CriterionResult r;
            {
                py::gil_scoped_release release;
                r = run_criterion(id, o);
            }
            return py::make_tuple(r.passed, r.name, r.detail);
        },
        py::arg("criterion"), py::arg("seed") = VerifyOptions{}.seed);
}
