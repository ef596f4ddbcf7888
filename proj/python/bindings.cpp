#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jwvie/benchmarks.hpp"
#include "jwvie/criterion.hpp"
#include "jwvie/errors.hpp"
#include "jwvie/quadrature.hpp"
#include "jwvie/solver.hpp"

namespace py = pybind11;
using namespace jwvie;

namespace {

ErrorWeight parse_weight(const std::string& name) {
  if (name == "global") return ErrorWeight::kGlobal;
  if (name == "piecewise") return ErrorWeight::kPiecewise;
  throw DomainError("weight must be 'global' or 'piecewise'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Jacobi-wavelet collocation for third-kind Volterra integral equations";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<JacobiParams>(m, "JacobiParams")
      .def(py::init<double, double>(), py::arg("nu"), py::arg("gamma"))
      .def_property_readonly("nu", &JacobiParams::nu)
      .def_property_readonly("gamma", &JacobiParams::gamma)
      .def("__repr__", [](const JacobiParams& p) {
        return "JacobiParams(nu=" + std::to_string(p.nu()) +
               ", gamma=" + std::to_string(p.gamma()) + ")";
      });

  m.def("eval_jacobi", &eval_jacobi, py::arg("params"), py::arg("degree"), py::arg("t"));
  m.def("eval_jacobi_derivative", &eval_jacobi_derivative, py::arg("params"),
        py::arg("degree"), py::arg("t"));
  m.def("jacobi_norm", &jacobi_norm, py::arg("params"), py::arg("degree"));
  m.def("eval_weight", &eval_weight, py::arg("params"), py::arg("t"));

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def_readonly("params", &QuadratureRule::params)
      .def_readonly("order", &QuadratureRule::order)
      .def_readonly("nodes", &QuadratureRule::nodes)
      .def_readonly("weights", &QuadratureRule::weights)
      .def("apply", [](const QuadratureRule& r, const std::function<double(double)>& f) {
        return apply_rule(r, f);
      });
  m.def("gauss_jacobi_rule", &gauss_jacobi_rule, py::arg("params"), py::arg("order"));
  m.def("remainder_constant", &remainder_constant, py::arg("alpha"), py::arg("order"));

  py::class_<WaveletBasis>(m, "WaveletBasis")
      .def(py::init<int, int, double, JacobiParams>(), py::arg("k"), py::arg("M"),
           py::arg("T"), py::arg("params"))
      .def_property_readonly("k", &WaveletBasis::k)
      .def_property_readonly("M", &WaveletBasis::M)
      .def_property_readonly("T", &WaveletBasis::T)
      .def_property_readonly("params", &WaveletBasis::params)
      .def_property_readonly("size", &WaveletBasis::size)
      .def("eval", [](const WaveletBasis& b, int n, int m, double t) {
        return eval_wavelet(b, {n, m}, t);
      }, py::arg("n"), py::arg("m"), py::arg("t"));

  py::class_<WaveletSolution>(m, "WaveletSolution")
      .def_property_readonly("basis", &WaveletSolution::basis)
      .def_property_readonly("coeffs", &WaveletSolution::coeffs)
      .def("__call__", [](const WaveletSolution& s, double t) { return eval_expansion(s, t); });

  m.def("project", &project, py::arg("basis"), py::arg("u"), py::arg("quad_order") = 0);

  py::class_<VIEProblem>(m, "VIEProblem")
      .def(py::init([](double alpha, double beta, double T, KernelFunction kernel1,
                       ScalarFunction g, std::optional<ScalarFunction> exact) {
             VIEProblem p{alpha, beta, T, std::move(kernel1), std::move(g), std::move(exact)};
             p.validate();
             return p;
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("T"), py::arg("kernel1"),
           py::arg("g"), py::arg("exact") = py::none())
      .def_readonly("alpha", &VIEProblem::alpha)
      .def_readonly("beta", &VIEProblem::beta)
      .def_readonly("T", &VIEProblem::T)
      .def("kernel", &VIEProblem::kernel)
      .def("forcing", &VIEProblem::forcing)
      .def("exact", [](const VIEProblem& p, double t) {
        if (!p.exact) throw DomainError("problem has no exact solution");
        return (*p.exact)(t);
      });

  m.def("make_benchmark", [](const std::string& name) {
    return make_benchmark(parse_benchmark_id(name)).problem;
  }, py::arg("name"));

  m.def("collocation_points", [](const WaveletBasis& b) {
    return build_collocation_grid(b).points;
  }, py::arg("basis"));

  m.def("solve", &solve, py::arg("problem"), py::arg("basis"),
        py::arg("quad_order") = kDefaultQuadOrder);

  m.def("weighted_l2_error",
        [](const WaveletSolution& s, const ScalarFunction& exact, int order,
           const std::string& weight) {
          return weighted_l2_error(s, exact, order, parse_weight(weight));
        },
        py::arg("solution"), py::arg("exact"), py::arg("quad_order") = kErrorQuadOrder,
        py::arg("weight") = "global");

  m.def("max_error_at_collocation", [](const WaveletSolution& s, const ScalarFunction& exact) {
    return max_error_at_collocation(s, exact, build_collocation_grid(s.basis()));
  }, py::arg("solution"), py::arg("exact"));

  m.def("run_convergence_study",
        [](const std::string& example, const JacobiParams& params,
           const std::vector<int>& M_list, const std::vector<int>& k_list, int quad_order) {
          StudyOptions options;
          options.quad_order = quad_order;
          ConvergenceTable table;
          {
            py::gil_scoped_release release;
            table = run_convergence_study(parse_benchmark_id(example), params, M_list,
                                          k_list, options);
          }
          py::list rows;
          for (const ConvergenceRow& r : table.rows) {
            py::dict row;
            row["k"] = r.k;
            row["M"] = r.M;
            row["nu"] = r.nu;
            row["gamma"] = r.gamma;
            row["l2_error"] = r.l2_error;
            row["ratio"] = r.ratio ? py::object(py::float_(*r.ratio)) : py::object(py::none());
            row["max_abs_colloc"] = r.max_abs_colloc;
            rows.append(row);
          }
          return rows;
        },
        py::arg("example"), py::arg("params"), py::arg("M_list"), py::arg("k_list"),
        py::arg("quad_order") = kDefaultQuadOrder);

  m.def("select_basis",
        [](const VIEProblem& problem, const JacobiParams& params, double epsilon,
           int k_max, int M_max, int quad_order) {
          CriterionConfig cfg;
          cfg.epsilon = epsilon;
          BasisSelection choice = select_basis(problem, params, cfg, k_max, M_max, quad_order);
          py::dict out;
          out["k"] = choice.basis().k();
          out["M"] = choice.basis().M();
          out["satisfied"] = choice.report.satisfied;
          out["worst_value"] = choice.report.worst_value;
          out["solution"] = std::move(choice.solution);
          return out;
        },
        py::arg("problem"), py::arg("params"), py::arg("epsilon"), py::arg("k_max"),
        py::arg("M_max"), py::arg("quad_order") = kDefaultQuadOrder);
}
