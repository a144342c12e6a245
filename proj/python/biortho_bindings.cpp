// Python bindings for the main library operations: curvature block algebra,
// spectral/brute-force extremes of the bi-orthogonal curvature, model
// catalog, integral checks, conformal functionals, and the property suites.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <map>
#include <string>
#include <vector>

#include "biortho/analysis.hpp"
#include "biortho/bivector.hpp"
#include "biortho/common.hpp"
#include "biortho/integrals.hpp"
#include "biortho/mesh.hpp"
#include "biortho/models.hpp"
#include "biortho/property_lab.hpp"
#include "biortho/yamabe.hpp"

namespace py = pybind11;
using namespace biortho;

namespace {

py::dict integral_report_to_dict(const IntegralReport& ir) {
  py::dict d;
  d["model"] = ir.model;
  d["chi"] = ir.chi;
  d["hypotheses_met"] = ir.hypotheses_met;
  py::dict integrals;
  for (const auto& [name, value] : ir.integrals) integrals[name.c_str()] = value;
  py::dict residuals;
  for (const auto& [name, value] : ir.residuals) residuals[name.c_str()] = value;
  d["integrals"] = integrals;
  d["residuals"] = residuals;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "curvature laboratory for oriented Riemannian 4-manifolds";

  py::register_exception<NumericFailure>(m, "NumericFailure");

  py::class_<CurvatureBlocks>(m, "CurvatureBlocks")
      .def(py::init<>())
      .def_readwrite("s", &CurvatureBlocks::s)
      .def_readwrite("wplus", &CurvatureBlocks::wplus)
      .def_readwrite("wminus", &CurvatureBlocks::wminus)
      .def_readwrite("b", &CurvatureBlocks::b)
      .def("wnorm2", &CurvatureBlocks::wnorm2)
      .def("bnorm2", &CurvatureBlocks::bnorm2)
      .def("__repr__",
           [](const CurvatureBlocks& blocks) { return format_blocks(blocks); });

  m.def(
      "compose",
      [](const CurvatureBlocks& blocks) { return compose(blocks).m; },
      py::arg("blocks"),
      "curvature blocks -> symmetric 6x6 operator on 2-forms");
  m.def(
      "decompose",
      [](const Mat6& op) {
        CurvatureOperator co;
        co.m = op;
        return decompose(co);
      },
      py::arg("operator"), "symmetric 6x6 operator -> curvature blocks");

  py::class_<SpectralSummary>(m, "SpectralSummary")
      .def_readonly("wplus_eigs", &SpectralSummary::wplus_eigs)
      .def_readonly("wminus_eigs", &SpectralSummary::wminus_eigs)
      .def_readonly("k1perp", &SpectralSummary::k1perp)
      .def_readonly("k2perp", &SpectralSummary::k2perp)
      .def_readonly("k3perp", &SpectralSummary::k3perp);

  m.def("kperp_spectral", &kperp_spectral, py::arg("blocks"),
        "eigenvalue formulas for the extreme bi-orthogonal curvatures");

  py::class_<BruteForceExtremum>(m, "BruteForceExtremum")
      .def_readonly("value", &BruteForceExtremum::value)
      .def_readonly("a", &BruteForceExtremum::a)
      .def_readonly("b", &BruteForceExtremum::b)
      .def_readonly("grad_norm", &BruteForceExtremum::grad_norm);

  py::class_<BruteForceResult>(m, "BruteForceResult")
      .def_readonly("lo", &BruteForceResult::lo)
      .def_readonly("hi", &BruteForceResult::hi);

  m.def("kperp_bruteforce", &kperp_bruteforce, py::arg("blocks"),
        py::arg("starts") = 512,
        "multistart Grassmannian search for the same extremes");

  py::class_<CurvaturePredicates>(m, "CurvaturePredicates")
      .def_readonly("einstein", &CurvaturePredicates::einstein)
      .def_readonly("conformally_flat", &CurvaturePredicates::conformally_flat)
      .def_readonly("positive_isotropic", &CurvaturePredicates::positive_isotropic)
      .def_readonly("nonneg_isotropic", &CurvaturePredicates::nonneg_isotropic)
      .def_readonly("pinched_quarter_one", &CurvaturePredicates::pinched_quarter_one)
      .def_readonly("k1perp_nonneg", &CurvaturePredicates::k1perp_nonneg)
      .def_readonly("k1perp_positive", &CurvaturePredicates::k1perp_positive);

  m.def("predicates", &predicates, py::arg("blocks"),
        "pointwise curvature predicates at the documented thresholds");

  m.def(
      "sectional_from_span",
      [](const CurvatureBlocks& blocks, const Vec4& x, const Vec4& y) {
        return sectional(blocks, TwoPlane::from_span(x, y));
      },
      py::arg("blocks"), py::arg("x"), py::arg("y"),
      "sectional curvature of the plane spanned by x and y");
  m.def(
      "biortho_from_span",
      [](const CurvatureBlocks& blocks, const Vec4& x, const Vec4& y) {
        return ::biortho::biortho(blocks, TwoPlane::from_span(x, y));
      },
      py::arg("blocks"), py::arg("x"), py::arg("y"),
      "average of the sectional curvatures of span(x, y) and its complement");

  py::class_<ModelManifold>(m, "Model")
      .def_readonly("name", &ModelManifold::name)
      .def_readonly("parameters", &ModelManifold::parameters)
      .def_readonly("chi", &ModelManifold::euler_characteristic)
      .def_readonly("volume", &ModelManifold::volume)
      .def_readonly("blocks", &ModelManifold::blocks);

  m.def("model_names", &model_names);
  m.def("make_model", &make_model, py::arg("name"),
        py::arg("params") = std::map<std::string, double>{},
        "catalog model by name with parameter overrides");

  m.def(
      "gauss_bonnet_check",
      [](const ModelManifold& model) {
        return integral_report_to_dict(gauss_bonnet_check(model));
      },
      py::arg("model"));
  m.def(
      "euler_bound_check",
      [](const ModelManifold& model) {
        return integral_report_to_dict(euler_bound_check(model));
      },
      py::arg("model"));
  m.def(
      "scalar_energy_threshold",
      [](const ModelManifold& model) {
        const ThresholdReport th = scalar_energy_threshold_report(model);
        py::dict d;
        d["threshold"] = th.threshold;
        d["total_s2"] = th.integral_s2;
        d["min_k1perp"] = th.min_k1perp;
        d["below_threshold"] = th.below_threshold;
        d["negativity_observed"] = th.negativity_observed;
        d["exclusion_respected"] = th.exclusion_respected;
        return d;
      },
      py::arg("model"));

  py::class_<Mesh4>(m, "Mesh")
      .def_readonly("model_name", &Mesh4::model_name)
      .def_readonly("weights", &Mesh4::weights)
      .def_readonly("volume", &Mesh4::volume)
      .def_property_readonly("size", &Mesh4::size)
      .def("nodes",
           [](const Mesh4& mesh) {
             Eigen::MatrixXd coords(mesh.size(), 4);
             for (int i = 0; i < mesh.size(); ++i) coords.row(i) = mesh.node(i);
             return coords;
           })
      .def("laplacian", &Mesh4::laplacian, py::arg("u"))
      .def("gradsq", &Mesh4::gradsq, py::arg("u"))
      .def("integrate", &Mesh4::integrate, py::arg("u"))
      .def("band_project", &Mesh4::band_project, py::arg("u"));

  m.def(
      "make_mesh",
      [](const ModelManifold& model, const std::array<int, 4>& dims) {
        return make_mesh(model, dims);
      },
      py::arg("model"), py::arg("dims"),
      "tensor-product collocation mesh (s4, s2xs2, s2xt2, t4, s3xs1)");

  m.def(
      "functional_value",
      [](const Mesh4& mesh, const std::string& kind, const Field& u) {
        return functional_value(mesh, parse_kind(kind), u);
      },
      py::arg("mesh"), py::arg("kind"), py::arg("u"),
      "conformal energy quotient for kind in {y, yperp, y1perp}");

  py::class_<MinimizeResult>(m, "MinimizeResult")
      .def_readonly("u", &MinimizeResult::u)
      .def_readonly("value", &MinimizeResult::value)
      .def_readonly("converged", &MinimizeResult::converged)
      .def_readonly("total_clamps", &MinimizeResult::total_clamps)
      .def_property_readonly("iterations",
                             [](const MinimizeResult& res) {
                               return res.trace.empty() ? size_t(0)
                                                        : res.trace.size() - 1;
                             })
      .def_property_readonly("trace_values", [](const MinimizeResult& res) {
        std::vector<double> values;
        values.reserve(res.trace.size());
        for (const TraceRow& row : res.trace) values.push_back(row.value);
        return values;
      });

  m.def(
      "minimize",
      [](const Mesh4& mesh, const std::string& kind, const Field& start,
         int max_iterations, double value_tolerance) {
        MinimizeOptions opts;
        opts.max_iterations = max_iterations;
        opts.value_tolerance = value_tolerance;
        return minimize(mesh, parse_kind(kind), start, opts);
      },
      py::arg("mesh"), py::arg("kind"), py::arg("start"),
      py::arg("max_iterations") = 5000, py::arg("value_tolerance") = 1e-8,
      "projected gradient descent on the conformal energy quotient");

  py::class_<SuiteReport>(m, "SuiteReport")
      .def_readonly("suite", &SuiteReport::suite)
      .def_readonly("count", &SuiteReport::count)
      .def_readonly("tolerance", &SuiteReport::tolerance)
      .def_readonly("max_residual", &SuiteReport::max_residual)
      .def_readonly("failures", &SuiteReport::failures)
      .def_readonly("passed", &SuiteReport::passed)
      .def_readonly("counterexample", &SuiteReport::counterexample);

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, int count, double s_scale,
         double w_scale, double b_scale, const std::string& constraint) {
        RandomBlockSpec spec;
        spec.seed = seed;
        spec.count = count;
        spec.s_scale = s_scale;
        spec.w_scale = w_scale;
        spec.b_scale = b_scale;
        spec.constraint = parse_constraint(constraint);
        return run_suite(name, spec);
      },
      py::arg("name"), py::arg("seed") = 1, py::arg("count") = 1000,
      py::arg("s_scale") = 10.0, py::arg("w_scale") = 1.0, py::arg("b_scale") = 1.0,
      py::arg("constraint") = "none",
      "run a registered bulk property suite on seeded random blocks");
}
