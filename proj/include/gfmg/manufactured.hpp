#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gfmg/expression.hpp"
#include "gfmg/grid.hpp"

namespace gfmg {

/// Closed-form solution and coefficient on each side of the interface.
struct ExampleSpec {
  std::string name;
  double alpha = 0.5;
  ExpressionTree uL, uR, gammaL, gammaR;

  /// Throws ConfigError unless gammaL > 0 on [0, alpha] and gammaR > 0 on
  /// [alpha, 1], sampled at 10^4 points each.
  void validate() const;
};

ExampleSpec make_example(std::string name, double alpha, const std::string& uL, const std::string& uR,
                         const std::string& gammaL, const std::string& gammaR,
                         const std::map<std::string, double>& constants = {});

/// "example1".."example4" and "jump_study" (the latter uses `p` for gamma^L = 10^p).
ExampleSpec preset(const std::string& name, double p = 0.0);
std::vector<std::string> preset_names();

/// Analytic samples on every stored node, ghosts included.
struct ExactSolution {
  TwoSidedField u;
  TwoSidedField du;
};

struct SynthesizedProblem {
  ProblemData problem;
  ExactSolution exact;
};

/// f = -(gamma' u' + gamma u'') per side, boundary values, and the jumps
/// gD = u^R(alpha) - u^L(alpha), gN = gamma^R u^R'(alpha) - gamma^L u^L'(alpha).
/// gamma is sampled on the physical nodes of each side; its ghosts are
/// extrapolated, not sampled.
SynthesizedProblem synthesize_problem(const ExampleSpec& spec, const GridSpec& grid);

/// Convenience: grid with N+1 = intervals and the example's alpha.
SynthesizedProblem synthesize_problem(const ExampleSpec& spec, int intervals);

/// Per-side central differences (nodes next to the interface use their own
/// side's ghost), second-order one-sided differences at x=0, x=1 and at the
/// ghost nodes themselves.
TwoSidedField discrete_derivative(const TwoSidedField& u);

struct ErrorNorms {
  double eu = 0.0;
  double edu = 0.0;
};

/// Max-norm errors of u and of its discrete derivative over the physical nodes
/// (left 0..J, right J+1..N+1); ghosts are excluded.
ErrorNorms error_norms(const TwoSidedField& u, const ExactSolution& exact);

struct ConvergenceOrders {
  std::vector<double> row_orders;  // log2(e_{i-1} / e_i)
  double slope = 0.0;              // least-squares slope of log e against log h
};

/// `errors` holds (N+1, e) pairs with N+1 doubling from row to row.
ConvergenceOrders convergence_orders(const std::vector<std::pair<int, double>>& errors);

}  // namespace gfmg
