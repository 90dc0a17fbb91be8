#pragma once

#include <vector>

#include "gfmg/discretization.hpp"
#include "gfmg/grid.hpp"

namespace gfmg {

/// Pseudo-time steps of the relaxed problem (Delta t folded in).
struct RelaxationParams {
  InteriorField interior_step;  // h^2 / (gamma_{j-1/2} + gamma_{j+1/2}), same-side gamma
  double muD_dt = 0.9;
  double muN_dt = 0.0;          // 0.9 h / max(gamma^L_alpha, gamma^R_alpha)
};

RelaxationParams build_params(const ProblemData& p, const InterfaceStencil& st);

/// Interface stencil and step sizes. Both depend only on gamma and the grid,
/// so one instance serves any right-hand side posed with the same coefficient.
struct Smoother {
  InterfaceStencil stencil;
  RelaxationParams params;

  explicit Smoother(const ProblemData& p);
};

/// One Jacobi-type step on all N+4 unknowns: every update reads the old iterate.
void jacobi_sweep(const ProblemData& p, const Smoother& sm, TwoSidedField& u);

/// One Gauss-Seidel step, updating in place in the order
/// u^L_0, u^L_1..u^L_J, u^L_{J+1}, u^R_J, u^R_{J+1}..u^R_N, u^R_{N+1}.
void gauss_seidel_sweep(const ProblemData& p, const Smoother& sm, TwoSidedField& u);

enum class Scheme { jacobi, gauss_seidel };

struct RelaxationResult {
  TwoSidedField u;
  std::vector<double> history;  // ||u^{m+1}-u^m||_inf / ||u^{m+1}||_inf per sweep
  int sweeps = 0;
  bool converged = false;
};

/// Sweeps until the relative successive change drops to tol or max_sweeps is hit.
/// Non-convergence is reported through `converged`, not thrown.
RelaxationResult iterate_to_tolerance(const ProblemData& p, TwoSidedField u0, double tol,
                                      long max_sweeps, Scheme scheme);

/// ||a - b||_inf / ||a||_inf over all entries; the plain difference when a == 0.
double relative_change(const TwoSidedField& next, const TwoSidedField& prev);

}  // namespace gfmg
