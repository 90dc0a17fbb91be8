#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gfmg/banded.hpp"
#include "gfmg/discretization.hpp"
#include "gfmg/grid.hpp"
#include "gfmg/relaxation.hpp"

namespace gfmg {

enum class CycleType { tgcs, v, w };

CycleType parse_cycle_type(const std::string& name);
std::string to_string(CycleType c);

struct MgParams {
  int nu1 = 1;
  int nu2 = 1;
  CycleType cycle = CycleType::v;
  double omega1 = 0.5;
  int coarsest_intervals = 16;
  double tol = 1e-6;
  int max_cycles = 200;

  /// Recursive coarse visits per level: 1 for V and TGCS, 2 for W.
  int gamma_visits() const { return cycle == CycleType::w ? 2 : 1; }
};

/// One grid of the hierarchy. `problem` carries this level's coefficient and
/// is re-used as the storage for the residual problem on each visit.
struct MgLevel {
  ProblemData problem;
  Smoother smoother;
  std::unique_ptr<BandLU> direct;  // coarsest level only

  explicit MgLevel(ProblemData p);
  const GridSpec& grid() const { return problem.grid(); }
};

/// Levels ordered finest first. The coarse coefficients are injected from the
/// finest nodal values and their ghosts re-extrapolated per level.
class Hierarchy {
 public:
  Hierarchy(const ProblemData& fine, const MgParams& mgp);

  std::size_t size() const { return levels_.size(); }
  MgLevel& level(std::size_t k) { return *levels_.at(k); }
  const MgLevel& level(std::size_t k) const { return *levels_.at(k); }

 private:
  std::vector<std::unique_ptr<MgLevel>> levels_;
};

/// Grid sizes visited from `fine_intervals` down to the coarsest; throws
/// ConfigError when the sizes are not powers of two or a level cannot hold
/// the interface stencils.
std::vector<int> level_intervals(int fine_intervals, const MgParams& mgp);

/// Smallest power-of-two interval count >= 8 at which alpha still leaves two
/// interior nodes on each side. Returns fine_intervals if no coarser grid works.
int smallest_valid_coarsest(double alpha, int fine_intervals);

/// Coarse gamma by injection (node i <- fine node 2i), ghosts re-extrapolated.
TwoSidedField inject_gamma(const TwoSidedField& fine_gamma, const GridSpec& coarse);

/// Per-side restriction of the interior defect. Full weighting where the
/// whole same-side stencil exists; at the single interface-adjacent coarse
/// node one side uses omega1*r(2i) + (1-omega1)*r(2i-1) (left) or
/// (r(2i) + r(2i+1))/2 (right).
InteriorField restrict_defect(const InteriorField& r, const GridSpec& coarse, double omega1);

/// Which coarse node, if any, uses a reduced restriction formula.
enum class ReducedSide { left, right };
ReducedSide reduced_restriction_side(const GridSpec& fine, const GridSpec& coarse);

/// The interface defects are two scalars; they transfer unchanged.
std::pair<double, double> restrict_interface_defects(double dD, double dN);

/// Per-side linear interpolation, ghosts included.
TwoSidedField prolongate_correction(const TwoSidedField& coarse_e, const GridSpec& fine);

/// Exact solve of the residual problem held in the coarsest level.
TwoSidedField coarse_solve(const MgLevel& level);

/// One multigrid cycle on level k of the hierarchy, in place on u. The
/// level's `problem` holds the right-hand side.
void cycle(Hierarchy& h, std::size_t k, TwoSidedField& u, const MgParams& mgp);

struct CycleReport {
  /// residual_history[0] is the interior defect of the initial guess;
  /// residual_history[m] the defect after cycle m.
  std::vector<double> residual_history;
  /// rho_history[m-1] = residual_history[m] / residual_history[m-1].
  std::vector<double> rho_history;
  /// Relative successive change of the iterate per cycle.
  std::vector<double> change_history;
  int cycles_run = 0;
  bool converged = false;
};

struct MultigridResult {
  TwoSidedField u;
  CycleReport report;
};

/// Cycles from u0 (zero if absent) until the relative successive change
/// drops to mgp.tol or mgp.max_cycles is reached.
MultigridResult solve_multigrid(const ProblemData& p, const MgParams& mgp,
                                std::optional<TwoSidedField> u0 = std::nullopt);

/// Deterministic values in [-1, 1] on every unknown, boundary nodes zeroed.
TwoSidedField random_initial_guess(const GridSpec& grid, std::uint64_t seed);

struct ConvergenceFactor {
  double rho = 0.0;
  CycleReport report;
};

/// Asymptotic factor on a homogeneous problem, cycling from u0 until
/// |rho_m - rho_{m-1}| / rho_m < 1e-2. Throws ConfigError on non-homogeneous
/// data and std::runtime_error if the defect underflows first.
ConvergenceFactor estimate_convergence_factor(const ProblemData& homogeneous, const TwoSidedField& u0,
                                              const MgParams& mgp);

}  // namespace gfmg
