#include "gfmg/relaxation.hpp"

#include <algorithm>
#include <cmath>

namespace gfmg {

RelaxationParams build_params(const ProblemData& p, const InterfaceStencil& st) {
  const GridSpec& g = p.grid();
  const double h2 = g.h() * g.h();
  RelaxationParams rp;
  rp.interior_step = InteriorField(g);
  for (int j = 1; j <= g.j(); ++j) {
    rp.interior_step.left(j) =
        h2 / (half_point_gamma(p.gamma, Side::left, j - 1) + half_point_gamma(p.gamma, Side::left, j));
  }
  for (int j = g.j() + 1; j <= g.n(); ++j) {
    rp.interior_step.right(j) =
        h2 / (half_point_gamma(p.gamma, Side::right, j - 1) + half_point_gamma(p.gamma, Side::right, j));
  }
  rp.muD_dt = 0.9;
  rp.muN_dt = 0.9 * g.h() / std::max(st.gamma_left_alpha, st.gamma_right_alpha);
  return rp;
}

Smoother::Smoother(const ProblemData& p)
    : stencil(build_interface_stencil(p.gamma, p.grid())), params(build_params(p, stencil)) {}

namespace {

// Jacobi/Gauss-Seidel update of an interior node from the given neighbours.
inline double interior_update(const TwoSidedField& gamma, Side s, int j, double fj, double h2,
                              double u_prev, double u_next) {
  const double gm = 0.5 * (gamma.at(s, j - 1) + gamma.at(s, j));
  const double gp = 0.5 * (gamma.at(s, j) + gamma.at(s, j + 1));
  return (fj * h2 + gm * u_prev + gp * u_next) / (gm + gp);
}

}  // namespace

void jacobi_sweep(const ProblemData& p, const Smoother& sm, TwoSidedField& u) {
  const GridSpec& g = u.grid();
  const int J = g.j();
  const double h2 = g.h() * g.h();
  const TwoSidedField old = u;

  u.left(0) = p.g0;
  for (int j = 1; j <= J; ++j) {
    u.left(j) = interior_update(p.gamma, Side::left, j, p.f.left(j), h2, old.left(j - 1), old.left(j + 1));
  }
  u.left(J + 1) = old.left(J + 1) + sm.params.muN_dt * (jump_flux(old, sm.stencil) - p.gN);
  u.right(J) = old.right(J) + sm.params.muD_dt * (p.gD - jump_dirichlet(old, sm.stencil));
  for (int j = J + 1; j <= g.n(); ++j) {
    u.right(j) =
        interior_update(p.gamma, Side::right, j, p.f.right(j), h2, old.right(j - 1), old.right(j + 1));
  }
  u.right(g.n() + 1) = p.g1;
}

void gauss_seidel_sweep(const ProblemData& p, const Smoother& sm, TwoSidedField& u) {
  const GridSpec& g = u.grid();
  const int J = g.j();
  const double h2 = g.h() * g.h();

  u.left(0) = p.g0;
  for (int j = 1; j <= J; ++j) {
    u.left(j) = interior_update(p.gamma, Side::left, j, p.f.left(j), h2, u.left(j - 1), u.left(j + 1));
  }
  // Fresh u^L_{<=J}, stale left ghost, stale right side.
  u.left(J + 1) += sm.params.muN_dt * (jump_flux(u, sm.stencil) - p.gN);
  // Fresh left side, stale right side.
  u.right(J) += sm.params.muD_dt * (p.gD - jump_dirichlet(u, sm.stencil));
  for (int j = J + 1; j <= g.n(); ++j) {
    u.right(j) =
        interior_update(p.gamma, Side::right, j, p.f.right(j), h2, u.right(j - 1), u.right(j + 1));
  }
  u.right(g.n() + 1) = p.g1;
}

double relative_change(const TwoSidedField& next, const TwoSidedField& prev) {
  TwoSidedField diff = next;
  diff -= prev;
  const double scale = next.max_abs();
  const double d = diff.max_abs();
  return scale > 0.0 ? d / scale : d;
}

RelaxationResult iterate_to_tolerance(const ProblemData& p, TwoSidedField u0, double tol,
                                      long max_sweeps, Scheme scheme) {
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  p.validate();
  const Smoother sm(p);
  RelaxationResult res;
  res.u = std::move(u0);
  for (long m = 0; m < max_sweeps; ++m) {
    const TwoSidedField prev = res.u;
    if (scheme == Scheme::jacobi) {
      jacobi_sweep(p, sm, res.u);
    } else {
      gauss_seidel_sweep(p, sm, res.u);
    }
    ++res.sweeps;
    const double change = relative_change(res.u, prev);
    res.history.push_back(change);
    if (change <= tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace gfmg
