#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfmg/ddm.hpp"
#include "gfmg/manufactured.hpp"
#include "gfmg/multigrid.hpp"

namespace gfmg {

/// "%.5e": six significant digits, '.' decimal, locale independent.
std::string format_sci(double v);

struct SolveReport {
  SynthesizedProblem problem;
  MultigridResult result;
  ErrorNorms errors;
  double wall_seconds = 0.0;
};

/// Multigrid from a zero initial guess on the example sampled at N+1 = intervals.
SolveReport run_solve(const ExampleSpec& spec, int intervals, const MgParams& mgp);

/// Columns: index, x, side, ghost, u, u_exact, du, du_exact; one row per
/// unknown in assembly order (N+4 rows).
std::string solution_csv(const SolveReport& r);
std::string solve_json(const SolveReport& r, const MgParams& mgp, bool timing);

struct ConvergenceRow {
  int intervals = 0;
  ErrorNorms errors;
  int cycles = 0;
  bool converged = false;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  ConvergenceOrders order_u;
  ConvergenceOrders order_du;
  bool all_converged() const;
};

/// `intervals` must double from entry to entry.
ConvergenceStudy run_convergence_study(const ExampleSpec& spec, const std::vector<int>& intervals,
                                       const MgParams& mgp);
/// Columns: N+1, eu, order_u, edu, order_du (orders empty on the first row).
std::string convergence_csv(const ConvergenceStudy& s);
std::string convergence_json(const ExampleSpec& spec, const ConvergenceStudy& s, const MgParams& mgp);

/// The example's coefficient with f = 0 and all boundary and jump data zero.
ProblemData homogeneous_problem(const ExampleSpec& spec, int intervals);

/// rho of the homogeneous problem from a seeded random initial guess.
ConvergenceFactor measure_rho(const ExampleSpec& spec, int intervals, const MgParams& mgp, std::uint64_t seed);

struct MgFactorCell {
  int fine = 0;
  int coarse = 0;
  bool valid = false;
  double rho = 0.0;
  CycleReport report;
};

struct MgFactorStudy {
  std::vector<int> fine;              // columns
  std::vector<int> coarse;            // rows
  std::vector<MgFactorCell> cells;    // row-major, coarse.size() x fine.size()
  const MgFactorCell& cell(std::size_t row, std::size_t col) const { return cells.at(row * fine.size() + col); }
};

/// A cell is valid when Nc+1 <= (N+1)/2 and the hierarchy can be built.
/// Throws ConfigError if no combination is valid.
MgFactorStudy run_mgfactor_study(const ExampleSpec& spec, const std::vector<int>& fine,
                                 const std::vector<int>& coarse, const MgParams& mgp, std::uint64_t seed);
/// Header "Nc+1\N+1" followed by the fine sizes; invalid cells are empty.
std::string mgfactor_csv(const MgFactorStudy& s);
std::string mgfactor_json(const ExampleSpec& spec, const MgFactorStudy& s, const MgParams& mgp,
                          std::uint64_t seed);

struct JumpStudy {
  std::vector<int> p;
  std::vector<ConvergenceFactor> factors;
  double spread() const;
};

/// rho on the jump_study preset for each exponent p.
JumpStudy run_jump_study(const std::vector<int>& p, int intervals, const MgParams& mgp, std::uint64_t seed);
std::string jump_csv(const JumpStudy& s);
std::string jump_json(const JumpStudy& s, int intervals, const MgParams& mgp, std::uint64_t seed);

struct MethodRow {
  std::string method;
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
  ErrorNorms errors;
  std::vector<double> history;  // relative successive change per iteration
  double contraction = 0.0;     // geometric mean ratio of successive changes
};

struct DdmComparison {
  double tol = 0.0;
  std::vector<MethodRow> rows;  // multigrid, gauss_seidel, ddm
};

/// All three methods run to the same relative-change tolerance mgp.tol.
DdmComparison run_ddm_comparison(const ExampleSpec& spec, int intervals, const MgParams& mgp,
                                 long max_sweeps, int max_ddm_iters);
std::string ddm_csv(const DdmComparison& c);
std::string ddm_json(const ExampleSpec& spec, int intervals, const DdmComparison& c, const MgParams& mgp);

}  // namespace gfmg
