#include "gfmg/discretization.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gfmg {

TwoSidedField extrapolate_gamma(std::span<const double> left, std::span<const double> right,
                                const GridSpec& grid) {
  const int j = grid.j();
  const int n = grid.n();
  if (left.size() != static_cast<std::size_t>(j + 1) ||
      right.size() != static_cast<std::size_t>(n + 1 - j)) {
    throw ConfigError("coefficient samples do not match the grid: expected " +
                      std::to_string(j + 1) + " left and " + std::to_string(n + 1 - j) +
                      " right values");
  }
  TwoSidedField gamma(grid);
  for (int i = 0; i <= j; ++i) gamma.left(i) = left[static_cast<std::size_t>(i)];
  for (int i = j + 1; i <= n + 1; ++i) gamma.right(i) = right[static_cast<std::size_t>(i - j - 1)];
  for (double g : left) {
    if (!(g > 0.0)) throw ConfigError("coefficient samples must be positive");
  }
  for (double g : right) {
    if (!(g > 0.0)) throw ConfigError("coefficient samples must be positive");
  }
  refresh_gamma_ghosts(gamma);
  return gamma;
}

void refresh_gamma_ghosts(TwoSidedField& gamma) {
  const int j = gamma.grid().j();
  gamma.left(j + 1) = 2.0 * gamma.left(j) - gamma.left(j - 1);
  gamma.right(j) = 2.0 * gamma.right(j + 1) - gamma.right(j + 2);
  if (!(gamma.left(j + 1) > 0.0)) {
    throw ConfigError("extrapolated left ghost coefficient is not positive");
  }
  if (!(gamma.right(j) > 0.0)) {
    throw ConfigError("extrapolated right ghost coefficient is not positive");
  }
}

double half_point_gamma(const TwoSidedField& gamma, Side side, int j) {
  const int lo = side == Side::left ? gamma.left_begin() : gamma.right_begin();
  const int hi = side == Side::left ? gamma.left_end() : gamma.right_end();
  if (j < lo || j + 1 >= hi) {
    throw std::out_of_range("half point " + std::to_string(j) + "+1/2 outside the " +
                            (side == Side::left ? "left" : "right") + " side");
  }
  return 0.5 * (gamma.at(side, j) + gamma.at(side, j + 1));
}

namespace {

double operator_entry(const TwoSidedField& gamma, const TwoSidedField& u, Side s, int j, double inv_h2) {
  const double gm = 0.5 * (gamma.at(s, j - 1) + gamma.at(s, j));
  const double gp = 0.5 * (gamma.at(s, j) + gamma.at(s, j + 1));
  const double uj = u.at(s, j);
  return inv_h2 * (gm * (uj - u.at(s, j - 1)) + gp * (uj - u.at(s, j + 1)));
}

// Derivative weights at local coordinate s of the quadratic through s = -1, 0, 1.
std::array<double, 3> quadratic_derivative_weights(double s, double h) {
  return {(s - 0.5) / h, -2.0 * s / h, (s + 0.5) / h};
}

}  // namespace

InteriorField apply_operator(const TwoSidedField& gamma, const TwoSidedField& u) {
  const GridSpec& g = u.grid();
  const double inv_h2 = 1.0 / (g.h() * g.h());
  InteriorField out(g);
  for (int j = 1; j <= g.j(); ++j) out.left(j) = operator_entry(gamma, u, Side::left, j, inv_h2);
  for (int j = g.j() + 1; j <= g.n(); ++j) {
    out.right(j) = operator_entry(gamma, u, Side::right, j, inv_h2);
  }
  return out;
}

InterfaceStencil build_interface_stencil(const TwoSidedField& gamma, const GridSpec& grid) {
  const double t = grid.theta();
  const int j = grid.j();
  InterfaceStencil st;
  st.theta = t;
  st.dirichlet_left = {1.0 - t, t};
  st.dirichlet_right = {1.0 - t, t};
  // Left nodes J-1, J, J+1 centred at x_J; right nodes J, J+1, J+2 centred at x_{J+1}.
  st.flux_left = quadratic_derivative_weights(t, grid.h());
  st.flux_right = quadratic_derivative_weights(t - 1.0, grid.h());
  st.gamma_left_alpha = (1.0 - t) * gamma.left(j) + t * gamma.left(j + 1);
  st.gamma_right_alpha = (1.0 - t) * gamma.right(j) + t * gamma.right(j + 1);
  return st;
}

double left_flux_derivative(const TwoSidedField& u, const InterfaceStencil& st) {
  const int j = u.grid().j();
  return st.flux_left[0] * u.left(j - 1) + st.flux_left[1] * u.left(j) + st.flux_left[2] * u.left(j + 1);
}

double right_flux_derivative(const TwoSidedField& u, const InterfaceStencil& st) {
  const int j = u.grid().j();
  return st.flux_right[0] * u.right(j) + st.flux_right[1] * u.right(j + 1) +
         st.flux_right[2] * u.right(j + 2);
}

double jump_dirichlet(const TwoSidedField& u, const InterfaceStencil& st) {
  const int j = u.grid().j();
  const double r = st.dirichlet_right[0] * u.right(j) + st.dirichlet_right[1] * u.right(j + 1);
  const double l = st.dirichlet_left[0] * u.left(j) + st.dirichlet_left[1] * u.left(j + 1);
  return r - l;
}

double jump_flux(const TwoSidedField& u, const InterfaceStencil& st) {
  return st.gamma_right_alpha * right_flux_derivative(u, st) -
         st.gamma_left_alpha * left_flux_derivative(u, st);
}

DefectBundle compute_defect(const ProblemData& p, const TwoSidedField& u) {
  const GridSpec& g = u.grid();
  const InterfaceStencil st = build_interface_stencil(p.gamma, g);
  DefectBundle d;
  d.interior = apply_operator(p.gamma, u);
  for (int j = 1; j <= g.j(); ++j) d.interior.left(j) = p.f.left(j) - d.interior.left(j);
  for (int j = g.j() + 1; j <= g.n(); ++j) d.interior.right(j) = p.f.right(j) - d.interior.right(j);
  d.dD = p.gD - jump_dirichlet(u, st);
  d.dN = p.gN - jump_flux(u, st);
  d.d0 = p.g0 - u.left(0);
  d.d1 = p.g1 - u.right(g.n() + 1);
  return d;
}

int unknown_index(const GridSpec& grid, Side side, int node) {
  if (side == Side::left) {
    if (node < 0 || node > grid.j() + 1) throw std::out_of_range("left node outside 0..J+1");
    return node;
  }
  if (node < grid.j() || node > grid.n() + 1) throw std::out_of_range("right node outside J..N+1");
  return node + 2;
}

AssembledSystem assemble_system(const ProblemData& p) {
  const GridSpec& g = p.grid();
  const int n = g.n();
  const int J = g.j();
  const int size = n + 4;
  const double inv_h2 = 1.0 / (g.h() * g.h());
  AssembledSystem sys{BandMatrix(size, 2, 3), std::vector<double>(static_cast<std::size_t>(size), 0.0)};
  BandMatrix& a = sys.matrix;
  auto& b = sys.rhs;

  a.at(0, 0) = 1.0;
  b[0] = p.g0;

  auto interior_row = [&](Side s, int j, double fj) {
    const int row = unknown_index(g, s, j);
    const double gm = half_point_gamma(p.gamma, s, j - 1);
    const double gp = half_point_gamma(p.gamma, s, j);
    a.at(row, row - 1) = -gm * inv_h2;
    a.at(row, row) = (gm + gp) * inv_h2;
    a.at(row, row + 1) = -gp * inv_h2;
    b[static_cast<std::size_t>(row)] = fj;
  };
  for (int j = 1; j <= J; ++j) interior_row(Side::left, j, p.f.left(j));

  const InterfaceStencil st = build_interface_stencil(p.gamma, g);
  const int flux_row = unknown_index(g, Side::left, J + 1);
  for (int k = 0; k < 3; ++k) {
    a.at(flux_row, unknown_index(g, Side::left, J - 1 + k)) = -st.gamma_left_alpha * st.flux_left[k];
    a.at(flux_row, unknown_index(g, Side::right, J + k)) = st.gamma_right_alpha * st.flux_right[k];
  }
  b[static_cast<std::size_t>(flux_row)] = p.gN;

  const int dirichlet_row = unknown_index(g, Side::right, J);
  for (int k = 0; k < 2; ++k) {
    a.at(dirichlet_row, unknown_index(g, Side::left, J + k)) = -st.dirichlet_left[k];
    a.at(dirichlet_row, unknown_index(g, Side::right, J + k)) = st.dirichlet_right[k];
  }
  b[static_cast<std::size_t>(dirichlet_row)] = p.gD;

  for (int j = J + 1; j <= n; ++j) interior_row(Side::right, j, p.f.right(j));

  a.at(size - 1, size - 1) = 1.0;
  b[static_cast<std::size_t>(size - 1)] = p.g1;
  return sys;
}

std::vector<double> assemble_rhs(const ProblemData& p) {
  const GridSpec& g = p.grid();
  std::vector<double> b(static_cast<std::size_t>(g.n() + 4), 0.0);
  b.front() = p.g0;
  for (int j = 1; j <= g.j(); ++j) b[static_cast<std::size_t>(unknown_index(g, Side::left, j))] = p.f.left(j);
  b[static_cast<std::size_t>(unknown_index(g, Side::left, g.j() + 1))] = p.gN;
  b[static_cast<std::size_t>(unknown_index(g, Side::right, g.j()))] = p.gD;
  for (int j = g.j() + 1; j <= g.n(); ++j) {
    b[static_cast<std::size_t>(unknown_index(g, Side::right, j))] = p.f.right(j);
  }
  b.back() = p.g1;
  return b;
}

std::vector<double> to_vector(const TwoSidedField& u) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(u.grid().n() + 4));
  for (double x : u.left_values()) v.push_back(x);
  for (double x : u.right_values()) v.push_back(x);
  return v;
}

TwoSidedField from_vector(const GridSpec& grid, std::span<const double> v) {
  TwoSidedField u(grid);
  if (v.size() != static_cast<std::size_t>(grid.n() + 4)) {
    throw std::invalid_argument("vector length does not match N+4 unknowns");
  }
  const auto left = u.left_values();
  const auto right = u.right_values();
  std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(left.size()), left.begin());
  std::copy(v.begin() + static_cast<std::ptrdiff_t>(left.size()), v.end(), right.begin());
  return u;
}

TwoSidedField solve_direct(const ProblemData& p) {
  const AssembledSystem sys = assemble_system(p);
  const BandLU lu(sys.matrix);
  return from_vector(p.grid(), lu.solve(sys.rhs));
}

}  // namespace gfmg
