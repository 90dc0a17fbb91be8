#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gfmg/discretization.hpp"
#include "gfmg/grid.hpp"

namespace testing {

/// Random problem with a positive coefficient whose extrapolated ghosts stay
/// positive; `jump` scales the left coefficient.
inline gfmg::ProblemData random_problem(int n, double alpha, std::mt19937_64& rng, double jump = 1.0) {
  const gfmg::GridSpec g(n, alpha);
  std::uniform_real_distribution<double> coef(1.0, 1.4);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::vector<double> gl(static_cast<std::size_t>(g.j() + 1));
  std::vector<double> gr(static_cast<std::size_t>(n + 1 - g.j()));
  for (double& v : gl) v = jump * coef(rng);
  for (double& v : gr) v = coef(rng);
  gfmg::ProblemData p{gfmg::extrapolate_gamma(gl, gr, g), gfmg::InteriorField(g)};
  for (int i = 1; i <= n; ++i) p.f[i] = val(rng);
  p.g0 = val(rng);
  p.g1 = val(rng);
  p.gD = val(rng);
  p.gN = val(rng);
  return p;
}

inline gfmg::TwoSidedField random_field(const gfmg::GridSpec& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  gfmg::TwoSidedField u(g);
  for (double& v : u.left_values()) v = val(rng);
  for (double& v : u.right_values()) v = val(rng);
  return u;
}

inline Eigen::MatrixXd dense(const gfmg::BandMatrix& a) {
  const int n = a.size();
  const std::vector<double> d = a.to_dense();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = d[static_cast<std::size_t>(i * n + j)];
  }
  return m;
}

inline Eigen::VectorXd vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// ||A||_inf ||u||_inf + ||b||_inf for the assembled system of p.
inline double backward_scale(const gfmg::ProblemData& p, const gfmg::TwoSidedField& u) {
  const gfmg::AssembledSystem sys = gfmg::assemble_system(p);
  const Eigen::MatrixXd a = dense(sys.matrix);
  return a.cwiseAbs().rowwise().sum().maxCoeff() * u.max_abs() + vec(sys.rhs).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const gfmg::TwoSidedField& a, const gfmg::TwoSidedField& b) {
  double m = 0.0;
  for (int i = a.left_begin(); i < a.left_end(); ++i) m = std::max(m, std::abs(a.left(i) - b.left(i)));
  for (int i = a.right_begin(); i < a.right_end(); ++i) m = std::max(m, std::abs(a.right(i) - b.right(i)));
  return m;
}

inline bool all_finite(const gfmg::TwoSidedField& u) {
  for (double v : u.left_values()) {
    if (!std::isfinite(v)) return false;
  }
  for (double v : u.right_values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace testing
