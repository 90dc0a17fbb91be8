#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gfmg/study.hpp"

namespace py = pybind11;

namespace {

py::dict field_dict(const gfmg::TwoSidedField& f) {
  py::dict d;
  d["left"] = std::vector<double>(f.left_values().begin(), f.left_values().end());
  d["right"] = std::vector<double>(f.right_values().begin(), f.right_values().end());
  return d;
}

py::dict report_dict(const gfmg::CycleReport& r) {
  py::dict d;
  d["residual_history"] = r.residual_history;
  d["rho_history"] = r.rho_history;
  d["change_history"] = r.change_history;
  d["cycles"] = r.cycles_run;
  d["converged"] = r.converged;
  return d;
}

gfmg::MgParams make_params(int nu1, int nu2, const std::string& cycle, double omega1, int nc, double tol,
                           int max_cycles) {
  gfmg::MgParams m;
  m.nu1 = nu1;
  m.nu2 = nu2;
  m.cycle = gfmg::parse_cycle_type(cycle);
  m.omega1 = omega1;
  m.coarsest_intervals = nc;
  m.tol = tol;
  m.max_cycles = max_cycles;
  return m;
}

#define GFMG_MG_ARGS                                                                                      \
  py::arg("nu1") = 1, py::arg("nu2") = 1, py::arg("cycle") = "v", py::arg("omega1") = 0.5, py::arg("nc") = 16, \
      py::arg("tol") = 1e-6, py::arg("max_cycles") = 200

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ghost-fluid multigrid solver for 1D elliptic interface problems";

  py::register_exception<gfmg::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<gfmg::GridSpec>(m, "GridSpec")
      .def(py::init<int, double>(), py::arg("n"), py::arg("alpha"))
      .def_property_readonly("n", &gfmg::GridSpec::n)
      .def_property_readonly("intervals", &gfmg::GridSpec::intervals)
      .def_property_readonly("h", &gfmg::GridSpec::h)
      .def_property_readonly("alpha", &gfmg::GridSpec::alpha)
      .def_property_readonly("j", &gfmg::GridSpec::j)
      .def_property_readonly("theta", &gfmg::GridSpec::theta)
      .def("x", &gfmg::GridSpec::x);

  py::class_<gfmg::ExampleSpec>(m, "Example")
      .def_readonly("name", &gfmg::ExampleSpec::name)
      .def_readonly("alpha", &gfmg::ExampleSpec::alpha)
      .def_property_readonly("sources", [](const gfmg::ExampleSpec& s) {
        return py::make_tuple(s.uL.source(), s.uR.source(), s.gammaL.source(), s.gammaR.source());
      });

  m.def("preset", &gfmg::preset, py::arg("name"), py::arg("p") = 0.0);
  m.def("preset_names", &gfmg::preset_names);
  m.def(
      "make_example",
      [](double alpha, const std::string& uL, const std::string& uR, const std::string& gL, const std::string& gR) {
        return gfmg::make_example("custom", alpha, uL, uR, gL, gR);
      },
      py::arg("alpha"), py::arg("uL"), py::arg("uR"), py::arg("gammaL"), py::arg("gammaR"));

  m.def(
      "eval_jet",
      [](const std::string& expr, double x, std::map<std::string, double> constants) {
        const gfmg::Jet2 j = gfmg::parse_expression(expr, constants).eval_jet(x);
        return py::make_tuple(j.value, j.d1, j.d2);
      },
      py::arg("expr"), py::arg("x"), py::arg("constants") = std::map<std::string, double>{},
      "Value, first and second derivative of an expression in x.");

  m.def(
      "solve",
      [](const gfmg::ExampleSpec& spec, int n, int nu1, int nu2, const std::string& cycle, double omega1, int nc,
         double tol, int max_cycles) {
        const gfmg::SolveReport r = gfmg::run_solve(spec, n, make_params(nu1, nu2, cycle, omega1, nc, tol, max_cycles));
        py::dict d;
        d["u"] = field_dict(r.result.u);
        d["u_exact"] = field_dict(r.problem.exact.u);
        d["eu"] = r.errors.eu;
        d["edu"] = r.errors.edu;
        d["report"] = report_dict(r.result.report);
        return d;
      },
      py::arg("example"), py::arg("n"), GFMG_MG_ARGS, "Multigrid solve from a zero initial guess.");

  m.def(
      "solve_direct",
      [](const gfmg::ExampleSpec& spec, int n) {
        const gfmg::SynthesizedProblem sp = gfmg::synthesize_problem(spec, n);
        const gfmg::TwoSidedField u = gfmg::solve_direct(sp.problem);
        const gfmg::ErrorNorms e = gfmg::error_norms(u, sp.exact);
        py::dict d;
        d["u"] = field_dict(u);
        d["eu"] = e.eu;
        d["edu"] = e.edu;
        return d;
      },
      py::arg("example"), py::arg("n"));

  m.def(
      "convergence_study",
      [](const gfmg::ExampleSpec& spec, const std::vector<int>& n, int nu1, int nu2, const std::string& cycle,
         double omega1, int nc, double tol, int max_cycles) {
        const gfmg::ConvergenceStudy s =
            gfmg::run_convergence_study(spec, n, make_params(nu1, nu2, cycle, omega1, nc, tol, max_cycles));
        py::list rows;
        for (const auto& r : s.rows) {
          py::dict row;
          row["intervals"] = r.intervals;
          row["eu"] = r.errors.eu;
          row["edu"] = r.errors.edu;
          row["cycles"] = r.cycles;
          row["converged"] = r.converged;
          rows.append(row);
        }
        py::dict d;
        d["rows"] = rows;
        d["slope_u"] = s.order_u.slope;
        d["slope_du"] = s.order_du.slope;
        d["order_u"] = s.order_u.row_orders;
        d["order_du"] = s.order_du.row_orders;
        return d;
      },
      py::arg("example"), py::arg("n"), GFMG_MG_ARGS);

  m.def(
      "convergence_factor",
      [](const gfmg::ExampleSpec& spec, int n, std::uint64_t seed, int nu1, int nu2, const std::string& cycle,
         double omega1, int nc, double tol, int max_cycles) {
        const gfmg::ConvergenceFactor f =
            gfmg::measure_rho(spec, n, make_params(nu1, nu2, cycle, omega1, nc, tol, max_cycles), seed);
        py::dict d;
        d["rho"] = f.rho;
        d["report"] = report_dict(f.report);
        return d;
      },
      py::arg("example"), py::arg("n"), py::arg("seed") = 1, GFMG_MG_ARGS,
      "Asymptotic factor on the homogeneous problem with the example's coefficient.");

  m.def(
      "compare_ddm",
      [](const gfmg::ExampleSpec& spec, int n, double tol, long max_sweeps, int max_ddm_iters) {
        gfmg::MgParams mgp;
        mgp.tol = tol;
        const gfmg::DdmComparison c = gfmg::run_ddm_comparison(spec, n, mgp, max_sweeps, max_ddm_iters);
        py::list rows;
        for (const auto& r : c.rows) {
          py::dict row;
          row["method"] = r.method;
          row["iterations"] = r.iterations;
          row["converged"] = r.converged;
          row["diverged"] = r.diverged;
          row["eu"] = r.errors.eu;
          row["edu"] = r.errors.edu;
          row["contraction"] = r.contraction;
          rows.append(row);
        }
        return rows;
      },
      py::arg("example"), py::arg("n") = 64, py::arg("tol") = 1e-6, py::arg("max_sweeps") = 1000000,
      py::arg("max_ddm_iters") = 200);
}
