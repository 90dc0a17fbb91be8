#include "gfmg/ddm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfmg/banded.hpp"
#include "gfmg/discretization.hpp"

namespace gfmg {

double DdmResult::contraction() const {
  double log_sum = 0.0;
  int count = 0;
  for (std::size_t m = 1; m < increment_history.size(); ++m) {
    if (increment_history[m] > 0.0 && increment_history[m - 1] > 0.0) {
      log_sum += std::log(increment_history[m] / increment_history[m - 1]);
      ++count;
    }
  }
  return count == 0 ? 0.0 : std::exp(log_sum / count);
}

namespace {

// Left block: u^L_0..u^L_{J+1}; the last row closes it with the Dirichlet
// interpolant at alpha.
BandMatrix left_matrix(const ProblemData& p, const InterfaceStencil& st) {
  const GridSpec& g = p.grid();
  const int J = g.j();
  const double inv_h2 = 1.0 / (g.h() * g.h());
  BandMatrix a(J + 2, 1, 1);
  a.at(0, 0) = 1.0;
  for (int j = 1; j <= J; ++j) {
    const double gm = half_point_gamma(p.gamma, Side::left, j - 1);
    const double gp = half_point_gamma(p.gamma, Side::left, j);
    a.at(j, j - 1) = -gm * inv_h2;
    a.at(j, j) = (gm + gp) * inv_h2;
    a.at(j, j + 1) = -gp * inv_h2;
  }
  a.at(J + 1, J) = st.dirichlet_left[0];
  a.at(J + 1, J + 1) = st.dirichlet_left[1];
  return a;
}

// Right block: u^R_J..u^R_{N+1} at local index j-J; the first row closes it
// with the right-side flux at alpha.
BandMatrix right_matrix(const ProblemData& p, const InterfaceStencil& st) {
  const GridSpec& g = p.grid();
  const int J = g.j();
  const int n = g.n();
  const double inv_h2 = 1.0 / (g.h() * g.h());
  const int size = n + 2 - J;
  BandMatrix a(size, 1, 2);
  for (int k = 0; k < 3; ++k) a.at(0, k) = st.gamma_right_alpha * st.flux_right[k];
  for (int j = J + 1; j <= n; ++j) {
    const int r = j - J;
    const double gm = half_point_gamma(p.gamma, Side::right, j - 1);
    const double gp = half_point_gamma(p.gamma, Side::right, j);
    a.at(r, r - 1) = -gm * inv_h2;
    a.at(r, r) = (gm + gp) * inv_h2;
    a.at(r, r + 1) = -gp * inv_h2;
  }
  a.at(size - 1, size - 1) = 1.0;
  return a;
}

}  // namespace

DdmResult ddm_iterate(const ProblemData& p, double tol, int max_iters) {
  p.validate();
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  const GridSpec& g = p.grid();
  const int J = g.j();
  const int n = g.n();
  const InterfaceStencil st = build_interface_stencil(p.gamma, g);
  const BandLU left(left_matrix(p, st));
  const BandLU right(right_matrix(p, st));

  std::vector<double> bl(static_cast<std::size_t>(J + 2), 0.0);
  bl.front() = p.g0;
  for (int j = 1; j <= J; ++j) bl[static_cast<std::size_t>(j)] = p.f.left(j);
  std::vector<double> br(static_cast<std::size_t>(n + 2 - J), 0.0);
  for (int j = J + 1; j <= n; ++j) br[static_cast<std::size_t>(j - J)] = p.f.right(j);
  br.back() = p.g1;

  DdmResult res;
  res.u = TwoSidedField(g);
  double trace = 0.0;  // interpolated u^R(alpha) of the (zero) initial right iterate
  double min_increment = std::numeric_limits<double>::infinity();
  for (int m = 0; m < max_iters; ++m) {
    bl.back() = trace - p.gD;
    const std::vector<double> ul = left.solve(bl);
    for (int j = 0; j <= J + 1; ++j) res.u.left(j) = ul[static_cast<std::size_t>(j)];

    br.front() = st.gamma_left_alpha * left_flux_derivative(res.u, st) + p.gN;
    const std::vector<double> ur = right.solve(br);
    for (int j = J; j <= n + 1; ++j) res.u.right(j) = ur[static_cast<std::size_t>(j - J)];
    ++res.iterations;

    const double next = st.dirichlet_right[0] * res.u.right(J) + st.dirichlet_right[1] * res.u.right(J + 1);
    const double increment = std::abs(next - trace);
    const double change = increment / (next != 0.0 ? std::abs(next) : 1.0);
    trace = next;
    res.trace_history.push_back(trace);
    res.change_history.push_back(change);
    res.increment_history.push_back(increment);
    if (!std::isfinite(change)) {
      res.diverged = true;
      break;
    }
    if (change <= tol) {
      res.converged = true;
      break;
    }
    min_increment = std::min(min_increment, increment);
    if (increment >= 10.0 * min_increment) {
      res.diverged = true;
      break;
    }
  }
  return res;
}

}  // namespace gfmg
