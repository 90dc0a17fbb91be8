#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "gfmg/study.hpp"

using namespace gfmg;

namespace {

constexpr double kSlopeMin = 1.9;
constexpr double kSlopeMax = 2.1;
constexpr double kMagnitudeFactor = 3.0;
constexpr double kRhoMax = 0.25;
constexpr double kRhoFineMin = 0.10;
constexpr double kRhoFineMax = 0.20;
constexpr int kRhoFineFrom = 512;
constexpr double kJumpRhoMin = 0.05;
constexpr double kJumpRhoMax = 0.20;
constexpr double kJumpSpread = 0.05;
constexpr int kJumpIntervals = 256;
constexpr double kOracleTol = 1e-8;
constexpr double kSweepTol = 1e-13;
constexpr double kFixedPointTol = 1e-12;
constexpr double kDefectTol = 1e-13;
constexpr double kConstantTol = 1e-15;
constexpr double kJetStep = 1e-5;
constexpr double kJetTol = 1e-6;
constexpr int kSweepIntervals = 64;
constexpr double kSweepMedianFactor = 10.0;
constexpr double kDdmContrast = 10.0;
constexpr std::uint64_t kSeed = 1;

const std::vector<std::string> kExamples{"example1", "example2", "example3", "example4"};
const std::vector<int> kTableSizes{64, 128, 256, 512, 1024};

struct Tabulated {
  double eu[5];
  double edu[5];
};

const Tabulated kPublishedErrors[4] = {
    {{1.87e-2, 4.59e-3, 1.13e-3, 2.77e-4, 6.95e-5}, {3.33e-1, 8.38e-2, 2.12e-2, 5.35e-3, 1.34e-3}},
    {{1.86e-2, 4.63e-3, 1.15e-3, 2.86e-4, 7.24e-5}, {3.38e-1, 8.38e-2, 2.10e-2, 5.26e-3, 1.30e-3}},
    {{2.07e-2, 5.15e-3, 1.20e-3, 2.19e-4, 6.10e-5}, {3.15e-1, 7.76e-2, 1.90e-2, 5.57e-3, 1.33e-3}},
    {{1.59e-2, 3.99e-3, 9.66e-4, 2.23e-4, 5.25e-5}, {3.46e-1, 8.74e-2, 2.22e-2, 5.74e-3, 1.47e-3}},
};

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

MgParams default_params() {
  MgParams m;
  m.coarsest_intervals = 16;
  return m;
}

double max_abs_diff(const TwoSidedField& a, const TwoSidedField& b) {
  double m = 0.0;
  for (int i = a.left_begin(); i < a.left_end(); ++i) m = std::max(m, std::abs(a.left(i) - b.left(i)));
  for (int i = a.right_begin(); i < a.right_end(); ++i) m = std::max(m, std::abs(a.right(i) - b.right(i)));
  return m;
}

void accuracy(const std::vector<ConvergenceStudy>& studies) {
  bool ok_u = true, ok_du = true, ok_mag = true;
  std::string du_detail, u_detail, mag_detail;
  double worst_ratio = 1.0;
  for (std::size_t e = 0; e < studies.size(); ++e) {
    const ConvergenceStudy& s = studies[e];
    const double su = s.order_u.slope, sd = s.order_du.slope;
    const bool pu = s.all_converged() && su >= kSlopeMin && su <= kSlopeMax;
    const bool pd = s.all_converged() && sd >= kSlopeMin && sd <= kSlopeMax;
    ok_u = ok_u && pu;
    ok_du = ok_du && pd;
    u_detail += kExamples[e] + "=" + fmt("%.3f", su) + (pu ? " " : "(out) ");
    du_detail += kExamples[e] + "=" + fmt("%.3f", sd) + (pd ? " " : "(out) ");
    for (std::size_t i = 0; i < kTableSizes.size(); ++i) {
      for (auto [got, want] : {std::pair{s.rows[i].errors.eu, kPublishedErrors[e].eu[i]},
                               std::pair{s.rows[i].errors.edu, kPublishedErrors[e].edu[i]}}) {
        const double ratio = std::max(got / want, want / got);
        worst_ratio = std::max(worst_ratio, ratio);
        if (!(ratio <= kMagnitudeFactor)) {
          ok_mag = false;
          mag_detail += " " + kExamples[e] + "@" + std::to_string(kTableSizes[i]);
        }
      }
    }
  }
  report(1, ok_u, "slope of log eu vs log h: " + u_detail);
  report(2, ok_du, "slope of log edu vs log h: " + du_detail);
  report(3, ok_mag, "worst ratio to tabulated errors " + fmt("%.3f", worst_ratio) + mag_detail);
}

void factor_matrix() {
  const std::vector<int> fine{32, 64, 128, 256, 512, 1024, 2048, 4096};
  const std::vector<int> coarse{16, 32, 64, 128};
  bool ok = true;
  double lo = 1.0, hi = 0.0, lo_fine = 1.0, hi_fine = 0.0;
  int cells = 0, bad = 0;
  std::string where;
  for (const std::string& name : kExamples) {
    const MgFactorStudy s = run_mgfactor_study(preset(name), fine, coarse, default_params(), kSeed);
    for (const MgFactorCell& c : s.cells) {
      if (!c.valid) continue;
      ++cells;
      lo = std::min(lo, c.rho);
      hi = std::max(hi, c.rho);
      bool pass = c.rho <= kRhoMax;
      if (c.fine >= kRhoFineFrom) {
        lo_fine = std::min(lo_fine, c.rho);
        hi_fine = std::max(hi_fine, c.rho);
        pass = pass && c.rho >= kRhoFineMin && c.rho <= kRhoFineMax;
      }
      if (!pass) {
        ok = false;
        ++bad;
        where += " " + name + "(" + std::to_string(c.fine) + "/" + std::to_string(c.coarse) + ")=" +
                 fmt("%.3f", c.rho);
      }
    }
  }
  report(4, ok,
         std::to_string(cells) + " cells, rho in [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "], N+1>=512 in [" +
             fmt("%.3f", lo_fine) + ", " + fmt("%.3f", hi_fine) + "], " + std::to_string(bad) + " outside:" + where);
}

void jump_independence() {
  const JumpStudy s = run_jump_study({0, 1, 2, 3, 4, 5}, kJumpIntervals, default_params(), kSeed);
  bool ok = s.spread() <= kJumpSpread;
  std::string detail = "N+1=" + std::to_string(kJumpIntervals) + " rho:";
  for (std::size_t i = 0; i < s.p.size(); ++i) {
    const double r = s.factors[i].rho;
    ok = ok && r >= kJumpRhoMin && r <= kJumpRhoMax;
    detail += " " + fmt("%.3f", r);
  }
  report(5, ok, detail + " spread " + fmt("%.3f", s.spread()));
}

/// One sweep computed row by row from the assembled system.
std::vector<double> oracle_sweep(const ProblemData& p, const std::vector<double>& x0, bool in_place) {
  const GridSpec& g = p.grid();
  const AssembledSystem sys = assemble_system(p);
  const BandMatrix& a = sys.matrix;
  const Smoother sm(p);
  const double muN = 0.9 * g.h() / std::max(sm.stencil.gamma_left_alpha, sm.stencil.gamma_right_alpha);
  std::vector<double> x = x0;
  const int n = a.size();
  for (int k = 0; k < n; ++k) {
    const std::vector<double>& src = in_place ? x : x0;
    double rk = sys.rhs[static_cast<std::size_t>(k)];
    for (int j = 0; j < n; ++j) rk -= a(k, j) * src[static_cast<std::size_t>(j)];
    const double xk = src[static_cast<std::size_t>(k)];
    if (k == g.j() + 1) {
      x[static_cast<std::size_t>(k)] = xk - muN * rk;
    } else if (k == g.j() + 2) {
      x[static_cast<std::size_t>(k)] = xk + 0.9 * rk;
    } else {
      x[static_cast<std::size_t>(k)] = xk + rk / a(k, k);
    }
  }
  return x;
}

ProblemData random_small_problem(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.26, 0.74), coef(1.0, 1.4), val(-1.0, 1.0);
  const GridSpec g(7, pos(rng));
  const double jump = std::pow(10.0, std::floor(val(rng) * 3.0));
  std::vector<double> gl(static_cast<std::size_t>(g.j() + 1)), gr(static_cast<std::size_t>(8 - g.j()));
  for (double& v : gl) v = jump * coef(rng);
  for (double& v : gr) v = coef(rng);
  ProblemData p{extrapolate_gamma(gl, gr, g), InteriorField(g)};
  for (int i = 1; i <= 7; ++i) p.f[i] = val(rng);
  p.g0 = val(rng);
  p.g1 = val(rng);
  p.gD = val(rng);
  p.gN = val(rng);
  return p;
}

void oracle_equivalence() {
  double worst = 0.0;
  for (const std::string& name : kExamples) {
    for (int n : {16, 32, 64, 128, 256}) {
      const ExampleSpec spec = preset(name);
      const ProblemData p = synthesize_problem(spec, n).problem;
      MgParams m = default_params();
      m.tol = 1e-12;
      m.coarsest_intervals = smallest_valid_coarsest(spec.alpha, n);
      const MultigridResult r = solve_multigrid(p, m);
      const TwoSidedField ref = solve_direct(p);
      worst = std::max(worst, r.report.converged ? max_abs_diff(r.u, ref) / ref.max_abs() : INFINITY);
    }
  }
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  double sweep_worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const ProblemData p = random_small_problem(rng);
    const Smoother sm(p);
    TwoSidedField u0(p.grid());
    for (double& v : u0.left_values()) v = val(rng);
    for (double& v : u0.right_values()) v = val(rng);
    for (bool gs : {false, true}) {
      TwoSidedField u = u0;
      if (gs) {
        gauss_seidel_sweep(p, sm, u);
      } else {
        jacobi_sweep(p, sm, u);
      }
      const std::vector<double> ref = oracle_sweep(p, to_vector(u0), gs);
      const std::vector<double> got = to_vector(u);
      double scale = 1.0;
      for (double v : ref) scale = std::max(scale, std::abs(v));
      for (std::size_t k = 0; k < ref.size(); ++k) sweep_worst = std::max(sweep_worst, std::abs(got[k] - ref[k]) / scale);
    }
  }
  report(6, worst <= kOracleTol && sweep_worst <= kSweepTol,
         "multigrid vs direct " + fmt("%.2e", worst) + ", sweeps vs row oracle " + fmt("%.2e", sweep_worst) +
             " over 500 N=7 problems");
}

void invariants() {
  double fixed = 0.0, defect = 0.0, constant = 0.0;
  for (const std::string& name : kExamples) {
    const ProblemData p = synthesize_problem(preset(name), 256).problem;
    const TwoSidedField u = solve_direct(p);
    TwoSidedField v = u;
    gauss_seidel_sweep(p, Smoother(p), v);
    fixed = std::max(fixed, relative_change(v, u));
    const DefectBundle d = compute_defect(p, u);
    // Normwise backward error: ||b - A u|| / (||A|| ||u|| + ||b||).
    const AssembledSystem sys = assemble_system(p);
    double norm_a = 0.0, norm_b = 0.0;
    for (int i = 0; i < sys.matrix.size(); ++i) {
      double row = 0.0;
      for (int j = 0; j < sys.matrix.size(); ++j) row += std::abs(sys.matrix(i, j));
      norm_a = std::max(norm_a, row);
      norm_b = std::max(norm_b, std::abs(sys.rhs[static_cast<std::size_t>(i)]));
    }
    const double r = std::max({d.interior.max_abs(), std::abs(d.dD), std::abs(d.dN), std::abs(d.d0), std::abs(d.d1)});
    defect = std::max(defect, r / (norm_a * u.max_abs() + norm_b));
  }
  for (int k = 1; k < 1000; ++k) {
    const double alpha = k / 1000.0;
    const int jc = static_cast<int>(std::floor(alpha * 32));
    if (jc < 2 || jc > 29) continue;
    const GridSpec fine(63, alpha), coarse(31, alpha);
    const InteriorField rc = restrict_defect(InteriorField(fine, 0.7), coarse, 0.5);
    for (int i = 1; i <= coarse.n(); ++i) constant = std::max(constant, std::abs(rc[i] - 0.7) / 0.7);
    const TwoSidedField ef = prolongate_correction(TwoSidedField(coarse, 0.7), fine);
    for (double v : ef.left_values()) constant = std::max(constant, std::abs(v - 0.7) / 0.7);
    for (double v : ef.right_values()) constant = std::max(constant, std::abs(v - 0.7) / 0.7);
    const auto id = restrict_interface_defects(0.7, 0.7);
    constant = std::max({constant, std::abs(id.first - 0.7), std::abs(id.second - 0.7)});
  }
  report(7, fixed <= kFixedPointTol && defect <= kDefectTol && constant <= kConstantTol,
         "GS fixed point " + fmt("%.2e", fixed) + ", defect " + fmt("%.2e", defect) + ", constants " +
             fmt("%.2e", constant));
}

void jets() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  double worst = 0.0;
  int checked = 0;
  std::vector<std::string> names = kExamples;
  names.push_back("jump_study");
  for (const std::string& name : names) {
    const ExampleSpec s = preset(name, 3.0);
    for (const ExpressionTree* e : {&s.uL, &s.uR, &s.gammaL, &s.gammaR}) {
      for (int k = 0; k < 100; ++k) {
        const double x = pos(rng);
        const Jet2 j = e->eval_jet(x);
        const double d1 = (e->eval(x + kJetStep) - e->eval(x - kJetStep)) / (2.0 * kJetStep);
        const double d2 = (e->eval_jet(x + kJetStep).d1 - e->eval_jet(x - kJetStep).d1) / (2.0 * kJetStep);
        const double scale1 = std::max({std::abs(j.d1), std::abs(j.value), 1.0});
        const double scale2 = std::max({std::abs(j.d2), std::abs(j.d1), std::abs(j.value), 1.0});
        worst = std::max({worst, std::abs(j.d1 - d1) / scale1, std::abs(j.d2 - d2) / scale2});
        ++checked;
      }
    }
  }
  report(8, worst <= kJetTol, std::to_string(checked) + " points, worst relative gap " + fmt("%.2e", worst));
}

void alpha_sweep() {
  bool ok = true;
  std::string detail;
  const std::pair<const char*, const char*> gammas[] = {{"1000", "1"}, {"1", "1000"}};
  for (auto [gl, gr] : gammas) {
    std::vector<double> eu;
    bool converged = true;
    double worst_alpha = 0.0, worst = 0.0;
    for (int k = 5; k <= 95; ++k) {
      const double alpha = k / 100.0;
      const ExampleSpec spec = make_example("sweep", alpha, "sin(pi*x)", "cos(pi*x)", gl, gr);
      MgParams m = default_params();
      m.coarsest_intervals = smallest_valid_coarsest(alpha, kSweepIntervals);
      const SolveReport r = run_solve(spec, kSweepIntervals, m);
      converged = converged && r.result.report.converged;
      eu.push_back(r.errors.eu);
      if (r.errors.eu > worst) {
        worst = r.errors.eu;
        worst_alpha = alpha;
      }
    }
    std::vector<double> sorted = eu;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double ratio = worst / median;
    ok = ok && converged && ratio <= kSweepMedianFactor;
    detail += std::string("gammaL=") + gl + ",gammaR=" + gr + ": max/median " + fmt("%.2f", ratio) + " at alpha " +
              fmt("%.2f", worst_alpha) + (converged ? "; " : " (not converged); ");
  }
  report(9, ok, detail);
}

void ddm_contrast() {
  const MgParams m = default_params();
  const DdmComparison good = run_ddm_comparison(preset("example2"), 64, m, 1000000, 200);
  const DdmComparison bad = run_ddm_comparison(preset("example1"), 64, m, 1000000, 200);
  const MethodRow& dg = good.rows[2];
  const MethodRow& db = bad.rows[2];
  const bool mg = good.rows[0].converged && bad.rows[0].converged;
  const bool contrast =
      !db.converged || (db.contraction > 0.0 && dg.contraction > 0.0 && db.contraction >= kDdmContrast * dg.contraction);
  report(10, dg.converged && mg && contrast,
         "ddm example2 " + std::string(dg.converged ? "converged" : "did not converge") + " in " +
             std::to_string(dg.iterations) + " (contraction " + fmt("%.2e", dg.contraction) + "), example1 " +
             (db.converged ? "converged" : "did not converge") + " in " + std::to_string(db.iterations) +
             " (contraction " + fmt("%.2e", db.contraction) + "), multigrid " +
             (mg ? "converged on both" : "failed"));
}

}  // namespace

int main() {
  std::vector<ConvergenceStudy> studies;
  for (const std::string& name : kExamples) {
    studies.push_back(run_convergence_study(preset(name), kTableSizes, default_params()));
  }
  accuracy(studies);
  factor_matrix();
  jump_independence();
  oracle_equivalence();
  invariants();
  jets();
  alpha_sweep();
  ddm_contrast();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
