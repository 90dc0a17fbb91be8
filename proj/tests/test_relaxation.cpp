#include <random>

#include "doctest.h"
#include "gfmg/relaxation.hpp"
#include "support.hpp"

using namespace gfmg;

namespace {

/// One sweep computed row by row from the dense assembled system. Interior rows
/// solve their own equation; the flux row takes a pseudo-time step of size muN
/// along A x - b, the Dirichlet row one of size muD along b - A x.
Eigen::VectorXd oracle_sweep(const ProblemData& p, const Eigen::VectorXd& x0, bool in_place) {
  const GridSpec& g = p.grid();
  const AssembledSystem sys = assemble_system(p);
  const Eigen::MatrixXd a = testing::dense(sys.matrix);
  const Eigen::VectorXd b = testing::vec(sys.rhs);
  const int flux_row = g.j() + 1;
  const int dirichlet_row = g.j() + 2;
  const double muN = 0.9 * g.h() / std::max(Smoother(p).stencil.gamma_left_alpha, Smoother(p).stencil.gamma_right_alpha);
  Eigen::VectorXd x = x0;
  for (int k = 0; k < x.size(); ++k) {
    const Eigen::VectorXd& src = in_place ? x : x0;
    const double rk = b(k) - a.row(k).dot(src);
    if (k == flux_row) {
      x(k) = src(k) - muN * rk;
    } else if (k == dirichlet_row) {
      x(k) = src(k) + 0.9 * rk;
    } else {
      x(k) = src(k) + rk / a(k, k);
    }
  }
  return x;
}

}  // namespace

TEST_CASE("step sizes follow the stability bounds") {
  std::mt19937_64 rng(41);
  const ProblemData p = testing::random_problem(15, 0.45, rng, 30.0);
  const Smoother sm(p);
  const GridSpec& g = p.grid();
  CHECK(sm.params.muD_dt == 0.9);
  CHECK(sm.params.muN_dt ==
        doctest::Approx(0.9 * g.h() / std::max(sm.stencil.gamma_left_alpha, sm.stencil.gamma_right_alpha)));
  for (int i = 1; i <= g.n(); ++i) {
    const Side s = i <= g.j() ? Side::left : Side::right;
    const double diag = half_point_gamma(p.gamma, s, i - 1) + half_point_gamma(p.gamma, s, i);
    CHECK(sm.params.interior_step[i] == doctest::Approx(g.h() * g.h() / diag));
  }
}

TEST_CASE("sweeps match the dense per-row oracle on small random problems") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> pos(0.26, 0.74);
  for (int trial = 0; trial < 200; ++trial) {
    const double jump = trial % 3 == 0 ? 1.0 : (trial % 3 == 1 ? 1e3 : 1e-3);
    const ProblemData p = testing::random_problem(7, pos(rng), rng, jump);
    const Smoother sm(p);
    const TwoSidedField u0 = testing::random_field(p.grid(), rng);
    const Eigen::VectorXd x0 = testing::vec(to_vector(u0));
    for (bool gs : {false, true}) {
      TwoSidedField u = u0;
      if (gs) {
        gauss_seidel_sweep(p, sm, u);
      } else {
        jacobi_sweep(p, sm, u);
      }
      const Eigen::VectorXd ref = oracle_sweep(p, x0, gs);
      const std::vector<double> got = to_vector(u);
      const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
      for (int k = 0; k < ref.size(); ++k) CHECK(std::abs(got[static_cast<std::size_t>(k)] - ref(k)) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("the direct solution is a fixed point of both sweeps") {
  std::mt19937_64 rng(47);
  for (double jump : {1.0, 1e3, 1e-3}) {
    const ProblemData p = testing::random_problem(31, 0.37, rng, jump);
    const Smoother sm(p);
    const TwoSidedField u = solve_direct(p);
    TwoSidedField a = u, b = u;
    gauss_seidel_sweep(p, sm, a);
    jacobi_sweep(p, sm, b);
    CHECK(relative_change(a, u) <= 1e-12);
    CHECK(relative_change(b, u) <= 1e-12);
  }
}

TEST_CASE("relaxation alone converges to the direct solution") {
  std::mt19937_64 rng(53);
  const ProblemData p = testing::random_problem(15, 0.55, rng, 10.0);
  const TwoSidedField ref = solve_direct(p);
  for (Scheme s : {Scheme::jacobi, Scheme::gauss_seidel}) {
    const RelaxationResult r = iterate_to_tolerance(p, TwoSidedField(p.grid()), 1e-13, 200000, s);
    CHECK(r.converged);
    CHECK(r.sweeps == static_cast<int>(r.history.size()));
    CHECK(testing::max_abs_diff(r.u, ref) <= 1e-9 * ref.max_abs());
  }
  const RelaxationResult gs = iterate_to_tolerance(p, TwoSidedField(p.grid()), 1e-10, 200000, Scheme::gauss_seidel);
  const RelaxationResult jac = iterate_to_tolerance(p, TwoSidedField(p.grid()), 1e-10, 200000, Scheme::jacobi);
  CHECK(gs.sweeps < jac.sweeps);
}

TEST_CASE("a sweep cap reports non-convergence instead of throwing") {
  std::mt19937_64 rng(59);
  const ProblemData p = testing::random_problem(63, 0.5, rng);
  const RelaxationResult r = iterate_to_tolerance(p, TwoSidedField(p.grid()), 1e-12, 5, Scheme::gauss_seidel);
  CHECK_FALSE(r.converged);
  CHECK(r.sweeps == 5);
}

TEST_CASE("relative change falls back to the plain difference at zero") {
  const GridSpec g(7, 0.5);
  TwoSidedField a(g), b(g, 0.5);
  CHECK(relative_change(a, b) == 0.5);
  a.left(1) = 2.0;
  CHECK(relative_change(a, b) == doctest::Approx(1.5 / 2.0));
}
