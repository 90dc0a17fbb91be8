#pragma once

#include <vector>

#include "gfmg/grid.hpp"

namespace gfmg {

/// Outcome of the discrete Dirichlet-Neumann iteration.
struct DdmResult {
  TwoSidedField u;
  std::vector<double> trace_history;   // interface value handed to the left solve
  std::vector<double> change_history;  // relative successive change of the trace
  std::vector<double> increment_history;  // |trace_m - trace_{m-1}|
  int iterations = 0;
  bool converged = false;
  bool diverged = false;

  /// Geometric mean of increment_history[m] / increment_history[m-1] over the
  /// iterations with nonzero increments; 0 if there are fewer than two.
  double contraction() const;
};

/// Alternates a direct left solve with the Dirichlet condition at alpha
/// (interface value taken from the previous right iterate, shifted by gD) and
/// a direct right solve with the flux at alpha matched to the new left flux
/// (shifted by gN). Both use the same interface stencils as the coupled
/// scheme, so a converged iterate solves the same algebraic system.
///
/// Stops when the relative trace change is <= tol; flags divergence once the
/// absolute trace increment grows to 10x its running minimum.
DdmResult ddm_iterate(const ProblemData& p, double tol, int max_iters);

}  // namespace gfmg
