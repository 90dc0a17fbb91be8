#include <cmath>

#include "doctest.h"
#include "gfmg/ddm.hpp"
#include "gfmg/manufactured.hpp"
#include "support.hpp"

using namespace gfmg;

namespace {

/// With gamma = 1 and zero data, a left trace t returns -(1-alpha)/alpha * t.
ProblemData unit_coefficient(double alpha) {
  return synthesize_problem(make_example("unit", alpha, "sin(x)", "sin(x)", "1", "1"), 64).problem;
}

}  // namespace

TEST_CASE("a converged iterate solves the coupled system") {
  const ExampleSpec specs[] = {preset("example2"), make_example("soft_left", 0.4, "sin(x)", "exp(x)", "1", "10")};
  for (const ExampleSpec& spec : specs) {
    const ProblemData p = synthesize_problem(spec, 128).problem;
    const DdmResult r = ddm_iterate(p, 1e-13, 200);
    CHECK(r.converged);
    CHECK_FALSE(r.diverged);
    const TwoSidedField ref = solve_direct(p);
    CHECK(testing::max_abs_diff(r.u, ref) <= 1e-9 * ref.max_abs());
    CHECK(r.trace_history.size() == static_cast<std::size_t>(r.iterations));
  }
}

TEST_CASE("unit coefficient contracts by (1-alpha)/alpha") {
  for (double alpha : {0.6, 0.743, 0.8}) {
    const DdmResult r = ddm_iterate(unit_coefficient(alpha), 1e-12, 500);
    CHECK(r.converged);
    CHECK(r.contraction() == doctest::Approx((1.0 - alpha) / alpha).epsilon(0.05));
  }
  for (double alpha : {0.343, 0.4}) {
    const DdmResult r = ddm_iterate(unit_coefficient(alpha), 1e-12, 500);
    CHECK_FALSE(r.converged);
    CHECK(r.diverged);
    CHECK(r.contraction() == doctest::Approx((1.0 - alpha) / alpha).epsilon(0.05));
  }
}

TEST_CASE("a stiff side on the Dirichlet end diverges") {
  const DdmResult r = ddm_iterate(synthesize_problem(preset("example4"), 128).problem, 1e-12, 200);
  CHECK(r.diverged);
}

TEST_CASE("an iteration cap is neither convergence nor divergence") {
  const DdmResult r = ddm_iterate(unit_coefficient(0.52), 1e-14, 3);
  CHECK(r.iterations == 3);
  CHECK_FALSE(r.converged);
  CHECK_FALSE(r.diverged);
}
