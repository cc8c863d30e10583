#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "beambounds/bounds.hpp"
#include "beambounds/eigensolve.hpp"
#include "beambounds/errors.hpp"
#include "beambounds/fem.hpp"
#include "beambounds/model.hpp"
#include "beambounds/study.hpp"
#include "beambounds/verification.hpp"

namespace py = pybind11;
namespace bb = beambounds;

namespace {

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

bb::SolverOptions options_for(const std::string& method) {
  bb::SolverOptions opts;
  if (method == "auto")
    opts.method = bb::SolverMethod::Auto;
  else if (method == "dense")
    opts.method = bb::SolverMethod::Dense;
  else if (method == "shift-invert")
    opts.method = bb::SolverMethod::ShiftInvert;
  else
    throw bb::ConfigError("method must be auto, dense or shift-invert");
  return opts;
}

py::dict row_to_dict(const bb::ConvergenceRow& r) {
  py::dict d;
  d["N"] = r.num_elements;
  d["h"] = r.h;
  d["lower"] = r.lower;
  d["upper"] = r.upper;
  d["err_low"] = r.err_low;
  d["eoc_low"] = r.eoc_low;
  d["err_up"] = r.err_up;
  d["eoc_up"] = r.eoc_up;
  d["eta_rel"] = r.eta_rel;
  d["eoc_eta"] = r.eoc_eta;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-sided buckling-load bounds for clamped Euler-Bernoulli beams";

  py::register_exception<bb::MisalignedMesh>(m, "MisalignedMesh", PyExc_ValueError);
  py::register_exception<bb::UnsupportedProfile>(m, "UnsupportedProfile", PyExc_ValueError);
  py::register_exception<bb::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<bb::NoConvergence>(m, "NoConvergence", PyExc_RuntimeError);
  py::register_exception<bb::FactorizationFailure>(m, "FactorizationFailure", PyExc_RuntimeError);

  py::class_<bb::Mesh>(m, "Mesh")
      .def(py::init<std::vector<double>>(), py::arg("nodes"))
      .def_property_readonly("num_elements", &bb::Mesh::num_elements)
      .def_property_readonly("nodes", [](const bb::Mesh& mesh) { return to_vector(mesh.nodes()); })
      .def_property_readonly("length", &bb::Mesh::length)
      .def_property_readonly("max_element_length", &bb::Mesh::max_element_length)
      .def("bisected", &bb::Mesh::bisected);

  m.def("make_uniform_mesh", &bb::make_uniform_mesh, py::arg("length"), py::arg("num_elements"));

  py::class_<bb::StiffnessProfile>(m, "StiffnessProfile")
      .def_static("uniform", &bb::StiffnessProfile::uniform, py::arg("length"), py::arg("value"))
      .def_static("piecewise_constant", &bb::StiffnessProfile::piecewise_constant, py::arg("breakpoints"),
                  py::arg("values"))
      .def_static(
          "polynomial",
          [](double length, std::vector<double> coefficients, bool monotone) {
            return bb::StiffnessProfile::polynomial(length, bb::Polynomial(std::move(coefficients)), monotone);
          },
          py::arg("length"), py::arg("coefficients"), py::arg("monotone") = false)
      .def("__call__", &bb::StiffnessProfile::operator(), py::arg("x"))
      .def_property_readonly("length", &bb::StiffnessProfile::length)
      .def_property_readonly("lower", &bb::StiffnessProfile::lower)
      .def_property_readonly("upper", &bb::StiffnessProfile::upper)
      .def("scaled", &bb::StiffnessProfile::scaled, py::arg("factor"));

  m.def("check_alignment", &bb::check_alignment, py::arg("mesh"), py::arg("profile"));

  m.def(
      "element_bending_matrix", [](double h, double ei) { return bb::element_bending_matrix(h, ei); },
      py::arg("h"), py::arg("stiffness"));
  m.def(
      "element_geometric_matrix", [](double h) { return bb::element_geometric_matrix(h); }, py::arg("h"));

  m.def(
      "assemble",
      [](const bb::Mesh& mesh, const bb::StiffnessProfile& profile, int q) {
        const auto system = bb::assemble(mesh, profile, q);
        return py::make_tuple(system.bending.to_dense(), system.geometric.to_dense());
      },
      py::arg("mesh"), py::arg("profile"), py::arg("quadrature_points") = bb::kDefaultQuadraturePoints,
      "Dense copies (A, B) of the reduced bending and geometric matrices.");

  m.def(
      "smallest_eigenvalues",
      [](const bb::Mesh& mesh, const bb::StiffnessProfile& profile, std::size_t count, const std::string& method) {
        return bb::smallest_eigenpairs(bb::assemble(mesh, profile), count, options_for(method)).eigenvalues;
      },
      py::arg("mesh"), py::arg("profile"), py::arg("m") = 1, py::arg("method") = "auto");

  m.def(
      "kappa_vector", [](const bb::Mesh& mesh, const bb::StiffnessProfile& p) { return bb::kappa_vector(mesh, p).values; },
      py::arg("mesh"), py::arg("profile"));
  m.def(
      "scaled_mesh_size",
      [](const bb::Mesh& mesh, const bb::StiffnessProfile& p) {
        return bb::scaled_mesh_size(mesh, bb::kappa_vector(mesh, p));
      },
      py::arg("mesh"), py::arg("profile"));
  m.def(
      "interpolation_constant",
      [](double h_ei) {
        const auto c = bb::interpolation_constant(h_ei);
        return py::make_tuple(c.value, c.squared);
      },
      py::arg("scaled_mesh_size"), "Returns (C_h, C_h**2).");
  m.def("lower_bound", &bb::lower_bound, py::arg("upper"), py::arg("c_squared"));

  py::class_<bb::EigenvalueBounds>(m, "EigenvalueBounds")
      .def_readonly("lower", &bb::EigenvalueBounds::lower)
      .def_readonly("upper", &bb::EigenvalueBounds::upper)
      .def_readonly("eta_rel", &bb::EigenvalueBounds::eta_rel)
      .def_readonly("auxiliary", &bb::EigenvalueBounds::auxiliary)
      .def("__repr__", [](const bb::EigenvalueBounds& b) {
        return "EigenvalueBounds(lower=" + bb::format_scientific(b.lower) + ", upper=" + bb::format_scientific(b.upper) +
               ")";
      });

  py::class_<bb::BoundsReport>(m, "BoundsReport")
      .def_readonly("bounds", &bb::BoundsReport::bounds)
      .def_readonly("scaled_mesh_size", &bb::BoundsReport::scaled_mesh_size)
      .def_property_readonly("constant", [](const bb::BoundsReport& r) { return r.constant.value; })
      .def_readonly("mesh_size", &bb::BoundsReport::mesh_size)
      .def_readonly("num_elements", &bb::BoundsReport::num_elements)
      .def_readonly("guaranteed", &bb::BoundsReport::guaranteed)
      .def_readonly("used_auxiliary", &bb::BoundsReport::used_auxiliary)
      .def_property_readonly("residuals", [](const bb::BoundsReport& r) { return r.upper_solve.residuals; });

  m.def(
      "two_sided_bounds",
      [](const bb::Mesh& mesh, const bb::StiffnessProfile& profile, std::size_t count, const std::string& method) {
        return bb::two_sided_bounds(mesh, profile, count, options_for(method));
      },
      py::arg("mesh"), py::arg("profile"), py::arg("m") = 1, py::arg("method") = "auto");
  m.def(
      "stepped_scaled_bounds",
      [](const bb::Mesh& mesh, std::vector<double> breakpoints, std::vector<double> thicknesses, std::size_t count) {
        return bb::stepped_scaled_bounds(mesh, breakpoints, thicknesses, count);
      },
      py::arg("mesh"), py::arg("breakpoints"), py::arg("thicknesses"), py::arg("m") = 1);

  m.def(
      "preset_names",
      []() {
        std::vector<std::string> names;
        for (auto p : bb::all_presets()) names.emplace_back(bb::preset_name(p));
        return names;
      });
  m.def(
      "analytic_first_eigenvalue",
      [](const std::string& preset) {
        const auto a = bb::analytic_first_eigenvalue(bb::preset_geometry(bb::parse_preset(preset)));
        return py::make_tuple(a.lambda, a.load);
      },
      py::arg("preset"), "Returns (lambda [m], P_1 [N]) for a uniform preset.");

  m.def(
      "compute_eoc",
      [](std::vector<double> errors, std::vector<double> h) { return bb::compute_eoc(errors, h); },
      py::arg("errors"), py::arg("mesh_sizes"));

  m.def(
      "run_case",
      [](const std::string& preset, std::vector<int> refinements, std::size_t eigenvalues) {
        bb::ExperimentConfig config;
        config.source = bb::parse_preset(preset);
        config.refinements = std::move(refinements);
        config.eigenvalues = eigenvalues;
        py::list tables;
        for (const auto& t : bb::run_multi_eigenvalue_study(config)) {
          py::list rows;
          for (const auto& r : t.rows) rows.append(row_to_dict(r));
          py::dict d;
          d["title"] = t.title;
          d["index"] = t.eigen_index;
          d["units"] = t.units;
          d["exact"] = t.exact;
          d["rows"] = rows;
          tables.append(d);
        }
        return tables;
      },
      py::arg("case"), py::arg("refinements") = std::vector<int>{}, py::arg("eigenvalues") = 1,
      "Convergence study of a preset; one dict per eigenvalue index.");

  m.def(
      "format_table",
      [](const std::string& preset, std::vector<int> refinements, const std::string& format) {
        bb::ExperimentConfig config;
        config.source = bb::parse_preset(preset);
        config.refinements = std::move(refinements);
        return bb::format_table(bb::run_case(config), bb::parse_format(format));
      },
      py::arg("case"), py::arg("refinements") = std::vector<int>{}, py::arg("format") = "csv");

  m.def("run_verification_suite", []() {
    py::list out;
    for (const auto& r : bb::run_verification_suite()) {
      py::dict d;
      d["check"] = r.check;
      d["instance"] = r.instance;
      d["measured"] = r.measured;
      d["bound"] = r.bound;
      d["passed"] = r.passed;
      out.append(d);
    }
    return out;
  });
}
