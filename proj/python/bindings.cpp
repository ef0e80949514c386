#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "farfield/compose.hpp"
#include "farfield/document.hpp"
#include "farfield/euler.hpp"
#include "farfield/laplace_inverse.hpp"
#include "farfield/oracle.hpp"

namespace py = pybind11;
using namespace farfield;

namespace {

std::array<double, 3> to_point(const std::vector<double>& x) {
  std::array<double, 3> p{0.0, 0.0, 0.0};
  for (size_t i = 0; i < x.size() && i < 3; ++i) p[i] = x[i];
  return p;
}

}  // namespace

PYBIND11_MODULE(farfield, m) {
  m.doc() =
      "Symbolic-numeric calculus for spatial asymptotic expansions with log "
      "terms: sphere spectral algebra, graded expansion ring, resonance-aware "
      "Laplace inversion, composition with near-identity diffeomorphisms, and "
      "the pressure-free Euler right-hand side.";
  m.attr("__version__") = "0.1.0";

  py::register_exception<DimensionMismatch>(m, "DimensionMismatch");
  py::register_exception<ResonantComponent>(m, "ResonantComponent");
  py::register_exception<MalformedSource>(m, "MalformedSource");
  py::register_exception<NotDivergenceFree>(m, "NotDivergenceFree");
  static py::exception<Error> base_error(m, "FarfieldError");

  py::class_<SphereFn>(m, "SphereFn")
      .def(py::init<int, int>(), py::arg("dim"), py::arg("band_limit"))
      .def_static("constant", &SphereFn::constant)
      .def_static("basis", &SphereFn::basis)
      .def_property_readonly("dim", &SphereFn::dim)
      .def_property_readonly("band_limit", &SphereFn::band_limit)
      .def("coeff", &SphereFn::coeff)
      .def("set_coeff", &SphereFn::set_coeff)
      .def("norm", &SphereFn::norm)
      .def("eval_dir",
           [](const SphereFn& f, const std::vector<double>& x) {
             return f.eval_dir(to_point(x).data());
           })
      .def("__add__", [](const SphereFn& a, const SphereFn& b) { return a + b; })
      .def("__mul__", [](const SphereFn& a, double s) { return a * s; })
      .def("__rmul__", [](const SphereFn& a, double s) { return a * s; });

  py::class_<Grade>(m, "Grade")
      .def(py::init([](int k, int j) { return Grade{k, j}; }))
      .def_readwrite("k", &Grade::k)
      .def_readwrite("j", &Grade::j)
      .def("__repr__", [](const Grade& g) {
        return "Grade(k=" + std::to_string(g.k) + ", j=" + std::to_string(g.j) + ")";
      });

  py::class_<AsymExpansion>(m, "AsymExpansion")
      .def(py::init<int>(), py::arg("dim"))
      .def_property_readonly("dim", &AsymExpansion::dim)
      .def("add_term",
           [](AsymExpansion& u, int k, int j, const SphereFn& a) {
             u.add_term(Grade{k, j}, a);
           })
      .def("coefficient",
           [](const AsymExpansion& u, int k, int j) {
             return u.coefficient(Grade{k, j});
           })
      .def("grades",
           [](const AsymExpansion& u) {
             std::vector<std::pair<int, int>> out;
             for (const auto& [g, a] : u.terms()) out.emplace_back(g.k, g.j);
             return out;
           })
      .def("norm", &AsymExpansion::norm)
      .def("empty", &AsymExpansion::empty)
      .def("truncated",
           [](const AsymExpansion& u, int N) { return u.truncated(N); })
      .def("__add__", add);

  py::class_<VectorExpansion>(m, "VectorExpansion")
      .def(py::init<int>(), py::arg("dim"))
      .def_property_readonly("dim", &VectorExpansion::dim)
      .def("__getitem__",
           [](const VectorExpansion& v, int i) {
             if (i < 0 || i >= v.dim()) throw py::index_error();
             return v[i];
           })
      .def("__setitem__", [](VectorExpansion& v, int i, const AsymExpansion& u) {
        if (i < 0 || i >= v.dim()) throw py::index_error();
        v[i] = u;
      });

  py::class_<SpaceSignature>(m, "SpaceSignature")
      .def_static("plain", &SpaceSignature::plain_space, py::arg("d"),
                  py::arg("n"), py::arg("N"), py::arg("ell"))
      .def_static("hat", &SpaceSignature::hat_space, py::arg("d"), py::arg("N"))
      .def_static("tilde", &SpaceSignature::tilde_space, py::arg("d"),
                  py::arg("N"))
      .def_static("star", &SpaceSignature::star_space, py::arg("d"), py::arg("N"))
      .def_readonly("n", &SpaceSignature::n)
      .def_readonly("N", &SpaceSignature::N)
      .def_readonly("ell", &SpaceSignature::ell);

  py::class_<MembershipReport>(m, "MembershipReport")
      .def_readonly("member", &MembershipReport::member)
      .def("violations", [](const MembershipReport& r) {
        std::vector<std::tuple<int, int, std::string, double>> out;
        for (const auto& v : r.violations)
          out.emplace_back(v.grade.k, v.grade.j, v.reason, v.magnitude);
        return out;
      });

  // sphere algebra
  m.def("laplace_beltrami", &laplace_beltrami);
  m.def("helmholtz_solve", &helmholtz_solve, py::arg("f"), py::arg("lambda_"),
        py::arg("kernel_tol") = 1e-11);
  m.def("sphere_multiply",
        [](const SphereFn& f, const SphereFn& g) { return multiply(f, g); });
  m.def("project_degree", &project_degree);
  m.def("inner_product", &inner_product);
  m.def("sphere_mean", &sphere_mean);

  // expansion ring
  m.def("multiply_expansions",
        [](const AsymExpansion& u, const AsymExpansion& v, int N_out) {
          return multiply_expansions(u, v, N_out);
        });
  m.def("partial_derivative",
        [](const AsymExpansion& u, int axis) { return partial_derivative(u, axis); });
  m.def("laplacian", [](const AsymExpansion& u) { return laplacian(u); });
  m.def("divergence", &divergence);
  m.def("scale", [](const AsymExpansion& u, double s) { return scale(u, s); });
  m.def("check_membership",
        [](const AsymExpansion& u, const SpaceSignature& sig) {
          return check_membership(u, sig);
        });
  m.def("eval_dense", [](const AsymExpansion& u, const std::vector<double>& x) {
    return eval_dense(u, to_point(x).data());
  });

  // inversion
  py::class_<InversionResult>(m, "InversionResult")
      .def_readonly("expansion", &InversionResult::expansion)
      .def_readonly("monopole_log", &InversionResult::monopole_log)
      .def("full_expansion", &InversionResult::full_expansion);
  m.def(
      "invert_laplacian",
      [](const AsymExpansion& source, int N, bool residual) {
        InversionOptions opts;
        opts.compute_residual = residual;
        const auto sig =
            SpaceSignature::plain_space(source.dim(), 3, N + 3, -3);
        return invert_laplacian_asym(source, sig, opts);
      },
      py::arg("source"), py::arg("N"), py::arg("residual") = false,
      "Constructive inverse of the Laplacian on the (3, N+3; -3) window.");
  m.def("mass_monopole",
        [](const AsymExpansion& source) { return mass_monopole(source); });

  // composition
  py::class_<AsymDiffeo>(m, "AsymDiffeo")
      .def_static("from_displacement", &AsymDiffeo::from_displacement,
                  py::arg("w"), py::arg("validate") = true)
      .def_static("identity", &AsymDiffeo::identity)
      .def_readonly("w", &AsymDiffeo::w);
  m.def("compose",
        [](const AsymExpansion& u, const AsymDiffeo& phi, int N_out) {
          return compose(u, phi, N_out);
        });
  m.def("conjugated_laplacian", &conjugated_laplacian);

  // euler layer
  py::class_<ConservationReport>(m, "ConservationReport")
      .def_readonly("a0_delta", &ConservationReport::a0_delta)
      .def_readonly("pass_", &ConservationReport::pass)
      .def("max_projection", [](const ConservationReport& r) {
        double p = 0.0;
        for (const auto& e : r.resonant_checks) p = std::max(p, e.projection);
        return p;
      });
  py::class_<EulerRHS>(m, "EulerRHS")
      .def_readonly("rhs", &EulerRHS::rhs)
      .def_readonly("pressure", &EulerRHS::pressure)
      .def_readonly("pressure_monopole", &EulerRHS::pressure_monopole)
      .def_readonly("report", &EulerRHS::report)
      .def_readonly("q_sym", &EulerRHS::q_sym)
      .def_property_readonly("tilde_member", [](const EulerRHS& r) {
        return r.tilde_membership.member;
      });
  py::class_<HamiltonianField>(m, "HamiltonianField")
      .def("velocity", &HamiltonianField::velocity);
  m.def("build_hamiltonian_field", &build_hamiltonian_field);
  m.def("example1", &example1, py::arg("alpha"));
  m.def("example2", &example2);
  m.def("q_nonlinearity", &q_nonlinearity);
  m.def("curl_field", &curl_field);
  m.def("euler_rhs",
        [](const HamiltonianField& f, int N) { return euler_rhs(f, N); },
        py::arg("field"), py::arg("N"));
  m.def("euler_rhs_symbolic",
        [](const VectorExpansion& u0, int N) { return euler_rhs(u0, N); },
        py::arg("u0"), py::arg("N"));
  m.def("conservation_check",
        [](const HamiltonianField& f, int N) { return conservation_check(f, N); });
  m.def("random_hamiltonian", &random_hamiltonian, py::arg("seed"), py::arg("N"),
        py::arg("L"));
  m.def("nontrivial_integrals_deviation",
        [](const SphereFn& a, int k) {
          return nontrivial_integrals_d2(a, k).max_deviation;
        });

  // flow
  m.def(
      "flow_volume_deviation",
      [](const HamiltonianField& f, std::vector<double> x0, double t_final,
         double step) {
        FlowOptions opts;
        opts.t_final = t_final;
        opts.step = step;
        const auto p = to_point(x0);
        return integrate_flow(2, f.velocity_eval(), p.data(), opts)
            .max_abs_det_minus_1;
      },
      py::arg("field"), py::arg("x0"), py::arg("t_final") = 1.0,
      py::arg("step") = 1e-2,
      "max |det d(phi) - 1| along the RK4 flow of the field.");

  // documents
  m.def("parse_document_text", [](const std::string& text) {
    const ExpansionDocument doc = parse_document(text);
    return doc.components;
  });
  m.def("serialize_scalar", [](const AsymExpansion& u, const SpaceSignature& sig) {
    return serialize_document(make_document(u, sig));
  });
}
