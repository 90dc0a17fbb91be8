#include "gfmg/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace gfmg {

using Json = nlohmann::ordered_json;

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

namespace {

Json mg_params_json(const MgParams& mgp) {
  return Json{{"cycle", to_string(mgp.cycle)}, {"nu1", mgp.nu1},
              {"nu2", mgp.nu2},                {"omega1", mgp.omega1},
              {"coarsest_intervals", mgp.coarsest_intervals},
              {"tol", mgp.tol},                {"max_cycles", mgp.max_cycles}};
}

Json spec_json(const ExampleSpec& spec) {
  return Json{{"name", spec.name},
              {"alpha", spec.alpha},
              {"uL", spec.uL.source()},
              {"uR", spec.uR.source()},
              {"gammaL", spec.gammaL.source()},
              {"gammaR", spec.gammaR.source()}};
}

Json report_json(const CycleReport& r) {
  return Json{{"cycles", r.cycles_run},
              {"converged", r.converged},
              {"residual_history", r.residual_history},
              {"rho_history", r.rho_history},
              {"change_history", r.change_history}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

SolveReport run_solve(const ExampleSpec& spec, int intervals, const MgParams& mgp) {
  SolveReport r;
  r.problem = synthesize_problem(spec, intervals);
  const auto start = std::chrono::steady_clock::now();
  r.result = solve_multigrid(r.problem.problem, mgp);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.errors = error_norms(r.result.u, r.problem.exact);
  return r;
}

std::string solution_csv(const SolveReport& r) {
  const TwoSidedField& u = r.result.u;
  const GridSpec& g = u.grid();
  const TwoSidedField du = discrete_derivative(u);
  const ExactSolution& ex = r.problem.exact;
  std::ostringstream out;
  out << "index,x,side,ghost,u,u_exact,du,du_exact\n";
  auto row = [&](Side s, int i, bool ghost) {
    out << unknown_index(g, s, i) << ',' << format_sci(g.x(i)) << ',' << (s == Side::left ? "L" : "R") << ','
        << (ghost ? 1 : 0) << ',' << format_sci(u.at(s, i)) << ',' << format_sci(ex.u.at(s, i)) << ','
        << format_sci(du.at(s, i)) << ',' << format_sci(ex.du.at(s, i)) << '\n';
  };
  for (int i = u.left_begin(); i < u.left_end(); ++i) row(Side::left, i, i == g.j() + 1);
  for (int i = u.right_begin(); i < u.right_end(); ++i) row(Side::right, i, i == g.j());
  return out.str();
}

std::string solve_json(const SolveReport& r, const MgParams& mgp, bool timing) {
  const GridSpec& g = r.result.u.grid();
  Json j{{"command", "solve"},
         {"intervals", g.intervals()},
         {"J", g.j()},
         {"theta", g.theta()},
         {"params", mg_params_json(mgp)},
         {"eu", r.errors.eu},
         {"edu", r.errors.edu},
         {"report", report_json(r.result.report)}};
  if (timing) j["wall_seconds"] = r.wall_seconds;
  return dump(j);
}

bool ConvergenceStudy::all_converged() const {
  return std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.converged; });
}

ConvergenceStudy run_convergence_study(const ExampleSpec& spec, const std::vector<int>& intervals,
                                       const MgParams& mgp) {
  if (intervals.size() < 2) throw ConfigError("a convergence study needs at least two grid sizes");
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i] != 2 * intervals[i - 1]) throw ConfigError("N+1 must double from entry to entry");
  }
  for (int n : intervals) level_intervals(n, mgp);
  ConvergenceStudy s;
  std::vector<std::pair<int, double>> eu, edu;
  for (int n : intervals) {
    const SolveReport r = run_solve(spec, n, mgp);
    s.rows.push_back({n, r.errors, r.result.report.cycles_run, r.result.report.converged});
    eu.emplace_back(n, r.errors.eu);
    edu.emplace_back(n, r.errors.edu);
  }
  s.order_u = convergence_orders(eu);
  s.order_du = convergence_orders(edu);
  return s;
}

std::string convergence_csv(const ConvergenceStudy& s) {
  std::ostringstream out;
  out << "N+1,eu,order_u,edu,order_du\n";
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const ConvergenceRow& r = s.rows[i];
    out << r.intervals << ',' << format_sci(r.errors.eu) << ',';
    if (i > 0) out << format_sci(s.order_u.row_orders[i - 1]);
    out << ',' << format_sci(r.errors.edu) << ',';
    if (i > 0) out << format_sci(s.order_du.row_orders[i - 1]);
    out << '\n';
  }
  return out.str();
}

std::string convergence_json(const ExampleSpec& spec, const ConvergenceStudy& s, const MgParams& mgp) {
  Json rows = Json::array();
  for (const ConvergenceRow& r : s.rows) {
    rows.push_back(
        {{"intervals", r.intervals}, {"eu", r.errors.eu}, {"edu", r.errors.edu}, {"cycles", r.cycles}, {"converged", r.converged}});
  }
  return dump(Json{{"command", "study convergence"},
                   {"example", spec_json(spec)},
                   {"params", mg_params_json(mgp)},
                   {"rows", rows},
                   {"order_u", s.order_u.row_orders},
                   {"order_du", s.order_du.row_orders},
                   {"slope_u", s.order_u.slope},
                   {"slope_du", s.order_du.slope}});
}

ProblemData homogeneous_problem(const ExampleSpec& spec, int intervals) {
  ProblemData p = synthesize_problem(spec, intervals).problem;
  p.f = InteriorField(p.grid());
  p.g0 = p.g1 = p.gD = p.gN = 0.0;
  return p;
}

ConvergenceFactor measure_rho(const ExampleSpec& spec, int intervals, const MgParams& mgp, std::uint64_t seed) {
  const ProblemData p = homogeneous_problem(spec, intervals);
  return estimate_convergence_factor(p, random_initial_guess(p.grid(), seed), mgp);
}

MgFactorStudy run_mgfactor_study(const ExampleSpec& spec, const std::vector<int>& fine,
                                 const std::vector<int>& coarse, const MgParams& mgp, std::uint64_t seed) {
  MgFactorStudy s;
  s.fine = fine;
  s.coarse = coarse;
  bool any = false;
  for (int nc : coarse) {
    for (int nf : fine) {
      MgFactorCell c;
      c.fine = nf;
      c.coarse = nc;
      MgParams local = mgp;
      local.coarsest_intervals = nc;
      if (2 * nc <= nf) {
        try {
          level_intervals(nf, local);
          GridSpec(nc - 1, spec.alpha);
          c.valid = true;
        } catch (const ConfigError&) {
        }
      }
      if (c.valid) {
        ConvergenceFactor f = measure_rho(spec, nf, local, seed);
        c.rho = f.rho;
        c.report = std::move(f.report);
        any = true;
      }
      s.cells.push_back(std::move(c));
    }
  }
  if (!any) throw ConfigError("no valid (N+1, Nc+1) combination");
  return s;
}

std::string mgfactor_csv(const MgFactorStudy& s) {
  std::ostringstream out;
  out << "Nc+1\\N+1";
  for (int n : s.fine) out << ',' << n;
  out << '\n';
  for (std::size_t r = 0; r < s.coarse.size(); ++r) {
    out << s.coarse[r];
    for (std::size_t c = 0; c < s.fine.size(); ++c) {
      out << ',';
      if (s.cell(r, c).valid) out << format_sci(s.cell(r, c).rho);
    }
    out << '\n';
  }
  return out.str();
}

std::string mgfactor_json(const ExampleSpec& spec, const MgFactorStudy& s, const MgParams& mgp,
                          std::uint64_t seed) {
  Json cells = Json::array();
  for (const MgFactorCell& c : s.cells) {
    if (!c.valid) continue;
    cells.push_back({{"fine_intervals", c.fine}, {"coarse_intervals", c.coarse}, {"rho", c.rho}, {"report", report_json(c.report)}});
  }
  return dump(Json{{"command", "study mg-factor"},
                   {"example", spec_json(spec)},
                   {"params", mg_params_json(mgp)},
                   {"seed", seed},
                   {"fine_intervals", s.fine},
                   {"coarse_intervals", s.coarse},
                   {"cells", cells}});
}

double JumpStudy::spread() const {
  if (factors.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(factors.begin(), factors.end(),
                                            [](const auto& a, const auto& b) { return a.rho < b.rho; });
  return hi->rho - lo->rho;
}

JumpStudy run_jump_study(const std::vector<int>& p, int intervals, const MgParams& mgp, std::uint64_t seed) {
  if (p.empty()) throw ConfigError("the jump study needs at least one exponent");
  level_intervals(intervals, mgp);
  JumpStudy s;
  for (int e : p) {
    if (e < 0) throw ConfigError("jump exponents must be nonnegative");
    s.p.push_back(e);
    s.factors.push_back(measure_rho(preset("jump_study", e), intervals, mgp, seed));
  }
  return s;
}

std::string jump_csv(const JumpStudy& s) {
  std::ostringstream out;
  out << "p,rho\n";
  for (std::size_t i = 0; i < s.p.size(); ++i) out << s.p[i] << ',' << format_sci(s.factors[i].rho) << '\n';
  return out.str();
}

std::string jump_json(const JumpStudy& s, int intervals, const MgParams& mgp, std::uint64_t seed) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.p.size(); ++i) {
    rows.push_back({{"p", s.p[i]}, {"rho", s.factors[i].rho}, {"report", report_json(s.factors[i].report)}});
  }
  return dump(Json{{"command", "study jump"},
                   {"intervals", intervals},
                   {"params", mg_params_json(mgp)},
                   {"seed", seed},
                   {"rows", rows},
                   {"spread", s.spread()}});
}

namespace {

double geometric_ratio(const std::vector<double>& h) {
  double log_sum = 0.0;
  int count = 0;
  for (std::size_t m = 1; m < h.size(); ++m) {
    if (h[m] > 0.0 && h[m - 1] > 0.0) {
      log_sum += std::log(h[m] / h[m - 1]);
      ++count;
    }
  }
  return count == 0 ? 0.0 : std::exp(log_sum / count);
}

}  // namespace

DdmComparison run_ddm_comparison(const ExampleSpec& spec, int intervals, const MgParams& mgp,
                                 long max_sweeps, int max_ddm_iters) {
  const SynthesizedProblem sp = synthesize_problem(spec, intervals);
  const ProblemData& p = sp.problem;
  DdmComparison c;
  c.tol = mgp.tol;

  const MultigridResult mg = solve_multigrid(p, mgp);
  c.rows.push_back({"multigrid", mg.report.cycles_run, mg.report.converged, false, error_norms(mg.u, sp.exact),
                    mg.report.change_history, geometric_ratio(mg.report.change_history)});

  const RelaxationResult gs = iterate_to_tolerance(p, TwoSidedField(p.grid()), mgp.tol, max_sweeps, Scheme::gauss_seidel);
  c.rows.push_back({"gauss_seidel", gs.sweeps, gs.converged, false, error_norms(gs.u, sp.exact), gs.history,
                    geometric_ratio(gs.history)});

  const DdmResult dd = ddm_iterate(p, mgp.tol, max_ddm_iters);
  c.rows.push_back({"ddm", dd.iterations, dd.converged, dd.diverged, error_norms(dd.u, sp.exact), dd.change_history,
                    dd.contraction()});
  return c;
}

std::string ddm_csv(const DdmComparison& c) {
  std::ostringstream out;
  out << "method,iterations,converged,diverged,eu,edu,contraction\n";
  for (const MethodRow& r : c.rows) {
    out << r.method << ',' << r.iterations << ',' << (r.converged ? 1 : 0) << ',' << (r.diverged ? 1 : 0) << ','
        << format_sci(r.errors.eu) << ',' << format_sci(r.errors.edu) << ',' << format_sci(r.contraction) << '\n';
  }
  return out.str();
}

std::string ddm_json(const ExampleSpec& spec, int intervals, const DdmComparison& c, const MgParams& mgp) {
  Json rows = Json::array();
  for (const MethodRow& r : c.rows) {
    rows.push_back({{"method", r.method},
                    {"iterations", r.iterations},
                    {"converged", r.converged},
                    {"diverged", r.diverged},
                    {"eu", r.errors.eu},
                    {"edu", r.errors.edu},
                    {"contraction", r.contraction},
                    {"history", r.history}});
  }
  return dump(Json{{"command", "compare ddm"},
                   {"tol", c.tol},
                   {"example", spec_json(spec)},
                   {"intervals", intervals},
                   {"params", mg_params_json(mgp)},
                   {"rows", rows}});
}

}  // namespace gfmg
