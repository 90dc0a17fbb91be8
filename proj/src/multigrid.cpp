#include "gfmg/multigrid.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

namespace gfmg {

CycleType parse_cycle_type(const std::string& name) {
  if (name == "v" || name == "V") return CycleType::v;
  if (name == "w" || name == "W") return CycleType::w;
  if (name == "tgcs" || name == "TGCS") return CycleType::tgcs;
  throw ConfigError("unknown cycle type '" + name + "' (expected v, w or tgcs)");
}

std::string to_string(CycleType c) {
  switch (c) {
    case CycleType::v:
      return "v";
    case CycleType::w:
      return "w";
    case CycleType::tgcs:
      return "tgcs";
  }
  return "?";
}

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

std::vector<int> level_intervals(int fine_intervals, const MgParams& mgp) {
  if (!is_power_of_two(fine_intervals)) {
    throw ConfigError("multigrid needs N+1 to be a power of two, got " + std::to_string(fine_intervals));
  }
  if (mgp.nu1 < 0 || mgp.nu2 < 0) throw ConfigError("smoothing counts must be non-negative");
  if (!(mgp.omega1 > 0.0 && mgp.omega1 <= 1.0)) throw ConfigError("omega1 must lie in (0,1]");
  std::vector<int> sizes{fine_intervals};
  if (mgp.cycle == CycleType::tgcs) {
    if (fine_intervals / 2 < 8) throw ConfigError("two-grid scheme needs N+1 >= 16");
    sizes.push_back(fine_intervals / 2);
    return sizes;
  }
  const int c = mgp.coarsest_intervals;
  if (!is_power_of_two(c) || c < 8) {
    throw ConfigError("coarsest N_c+1 must be a power of two >= 8, got " + std::to_string(c));
  }
  if (c > fine_intervals) {
    throw ConfigError("coarsest N_c+1=" + std::to_string(c) + " exceeds finest N+1=" +
                      std::to_string(fine_intervals));
  }
  while (sizes.back() > c) sizes.push_back(sizes.back() / 2);
  return sizes;
}

int smallest_valid_coarsest(double alpha, int fine_intervals) {
  for (int c = 8; c < fine_intervals; c *= 2) {
    try {
      GridSpec probe(c - 1, alpha);
      return c;
    } catch (const ConfigError&) {
    }
  }
  return fine_intervals;
}

TwoSidedField inject_gamma(const TwoSidedField& fine_gamma, const GridSpec& coarse) {
  TwoSidedField g(coarse);
  for (int i = 0; i <= coarse.j(); ++i) g.left(i) = fine_gamma.left(2 * i);
  for (int i = coarse.j() + 1; i <= coarse.n() + 1; ++i) g.right(i) = fine_gamma.right(2 * i);
  refresh_gamma_ghosts(g);
  return g;
}

MgLevel::MgLevel(ProblemData p) : problem(std::move(p)), smoother(problem) {}

Hierarchy::Hierarchy(const ProblemData& fine, const MgParams& mgp) {
  const std::vector<int> sizes = level_intervals(fine.grid().intervals(), mgp);
  levels_.push_back(std::make_unique<MgLevel>(fine));
  for (std::size_t k = 1; k < sizes.size(); ++k) {
    std::optional<GridSpec> grid;
    try {
      grid.emplace(sizes[k] - 1, fine.grid().alpha());
    } catch (const ConfigError& e) {
      throw ConfigError("multigrid level " + std::to_string(k) + " (N+1=" + std::to_string(sizes[k]) +
                        ") is too coarse: " + e.what());
    }
    ProblemData coarse;
    coarse.gamma = inject_gamma(levels_.back()->problem.gamma, *grid);
    coarse.f = InteriorField(*grid);
    levels_.push_back(std::make_unique<MgLevel>(std::move(coarse)));
  }
  MgLevel& bottom = *levels_.back();
  bottom.direct = std::make_unique<BandLU>(assemble_system(bottom.problem).matrix);
}

ReducedSide reduced_restriction_side(const GridSpec& fine, const GridSpec& coarse) {
  return 2 * coarse.j() == fine.j() ? ReducedSide::left : ReducedSide::right;
}

InteriorField restrict_defect(const InteriorField& r, const GridSpec& coarse, double omega1) {
  const GridSpec& fine = r.grid();
  const int jf = fine.j();
  InteriorField out(coarse);
  for (int i = 1; i <= coarse.j(); ++i) {
    const int f = 2 * i;
    if (f + 1 <= jf) {
      out.left(i) = 0.25 * r.left(f - 1) + 0.5 * r.left(f) + 0.25 * r.left(f + 1);
    } else {
      out.left(i) = omega1 * r.left(f) + (1.0 - omega1) * r.left(f - 1);
    }
  }
  for (int i = coarse.j() + 1; i <= coarse.n(); ++i) {
    const int f = 2 * i;
    if (f - 1 >= jf + 1) {
      out.right(i) = 0.25 * r.right(f - 1) + 0.5 * r.right(f) + 0.25 * r.right(f + 1);
    } else {
      out.right(i) = 0.5 * (r.right(f) + r.right(f + 1));
    }
  }
  return out;
}

std::pair<double, double> restrict_interface_defects(double dD, double dN) { return {dD, dN}; }

TwoSidedField prolongate_correction(const TwoSidedField& e, const GridSpec& fine) {
  TwoSidedField out(fine);
  for (int j = out.left_begin(); j < out.left_end(); ++j) {
    out.left(j) = (j % 2 == 0) ? e.left(j / 2) : 0.5 * (e.left(j / 2) + e.left(j / 2 + 1));
  }
  for (int j = out.right_begin(); j < out.right_end(); ++j) {
    out.right(j) = (j % 2 == 0) ? e.right(j / 2) : 0.5 * (e.right(j / 2) + e.right(j / 2 + 1));
  }
  return out;
}

TwoSidedField coarse_solve(const MgLevel& level) {
  if (!level.direct) throw std::logic_error("coarse_solve called on a level without a factorisation");
  return from_vector(level.grid(), level.direct->solve(assemble_rhs(level.problem)));
}

void cycle(Hierarchy& h, std::size_t k, TwoSidedField& u, const MgParams& mgp) {
  MgLevel& level = h.level(k);
  if (k + 1 == h.size()) {
    u = coarse_solve(level);
    return;
  }
  for (int s = 0; s < mgp.nu1; ++s) gauss_seidel_sweep(level.problem, level.smoother, u);

  const DefectBundle d = compute_defect(level.problem, u);
  MgLevel& coarse = h.level(k + 1);
  coarse.problem.f = restrict_defect(d.interior, coarse.grid(), mgp.omega1);
  std::tie(coarse.problem.gD, coarse.problem.gN) = restrict_interface_defects(d.dD, d.dN);
  // Zero whenever the smoother ran: it enforces the boundary rows exactly.
  coarse.problem.g0 = d.d0;
  coarse.problem.g1 = d.d1;

  TwoSidedField e(coarse.grid());
  for (int visit = 0; visit < mgp.gamma_visits(); ++visit) cycle(h, k + 1, e, mgp);
  u += prolongate_correction(e, level.grid());

  for (int s = 0; s < mgp.nu2; ++s) gauss_seidel_sweep(level.problem, level.smoother, u);
}

MultigridResult solve_multigrid(const ProblemData& p, const MgParams& mgp, std::optional<TwoSidedField> u0) {
  p.validate();
  if (!(mgp.tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (mgp.max_cycles < 1) throw ConfigError("max_cycles must be at least 1");
  Hierarchy h(p, mgp);
  MultigridResult res;
  res.u = u0 ? std::move(*u0) : TwoSidedField(p.grid());
  if (!(res.u.grid() == p.grid())) throw ConfigError("initial guess lives on a different grid");

  CycleReport& rep = res.report;
  rep.residual_history.push_back(compute_defect(p, res.u).interior.max_abs());
  for (int m = 0; m < mgp.max_cycles; ++m) {
    const TwoSidedField prev = res.u;
    cycle(h, 0, res.u, mgp);
    ++rep.cycles_run;
    const double r = compute_defect(p, res.u).interior.max_abs();
    const double r_prev = rep.residual_history.back();
    rep.residual_history.push_back(r);
    rep.rho_history.push_back(r_prev > 0.0 ? r / r_prev : 0.0);
    const double change = relative_change(res.u, prev);
    rep.change_history.push_back(change);
    if (change <= mgp.tol) {
      rep.converged = true;
      break;
    }
  }
  return res;
}

TwoSidedField random_initial_guess(const GridSpec& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Built by hand: std::uniform_real_distribution is not portable bit-for-bit.
  auto draw = [&rng] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
  TwoSidedField u(grid);
  for (double& v : u.left_values()) v = draw();
  for (double& v : u.right_values()) v = draw();
  u.left(0) = 0.0;
  u.right(grid.n() + 1) = 0.0;
  return u;
}

ConvergenceFactor estimate_convergence_factor(const ProblemData& p, const TwoSidedField& u0,
                                              const MgParams& mgp) {
  p.validate();
  if (p.f.max_abs() != 0.0 || p.g0 != 0.0 || p.g1 != 0.0 || p.gD != 0.0 || p.gN != 0.0) {
    throw ConfigError("convergence factor must be measured on homogeneous data");
  }
  if (u0.max_abs() == 0.0) throw ConfigError("convergence factor needs a nonzero initial guess");
  Hierarchy h(p, mgp);
  TwoSidedField u = u0;
  ConvergenceFactor out;
  CycleReport& rep = out.report;
  rep.residual_history.push_back(compute_defect(p, u).interior.max_abs());
  for (int m = 1; m <= mgp.max_cycles; ++m) {
    const TwoSidedField prev = u;
    cycle(h, 0, u, mgp);
    ++rep.cycles_run;
    rep.change_history.push_back(relative_change(u, prev));
    const double r = compute_defect(p, u).interior.max_abs();
    if (!(r > 1e-280) || !std::isfinite(r)) {
      throw std::runtime_error("defect underflowed after " + std::to_string(m) +
                               " cycles before the factor settled; use a larger initial guess");
    }
    const double rho = r / rep.residual_history.back();
    rep.residual_history.push_back(r);
    rep.rho_history.push_back(rho);
    out.rho = rho;
    if (m >= 2) {
      const double prev_rho = rep.rho_history[rep.rho_history.size() - 2];
      if (std::abs(rho - prev_rho) / rho < 1e-2) {
        rep.converged = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace gfmg
