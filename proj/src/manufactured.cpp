#include "gfmg/manufactured.hpp"

#include <algorithm>
#include <cmath>

#include "gfmg/discretization.hpp"

namespace gfmg {

void ExampleSpec::validate() const {
  constexpr int samples = 10000;
  for (int k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    if (!(gammaL.eval(t * alpha) > 0.0)) {
      throw ConfigError("gammaL is not positive at x=" + std::to_string(t * alpha));
    }
    const double xr = alpha + t * (1.0 - alpha);
    if (!(gammaR.eval(xr) > 0.0)) {
      throw ConfigError("gammaR is not positive at x=" + std::to_string(xr));
    }
  }
}

ExampleSpec make_example(std::string name, double alpha, const std::string& uL, const std::string& uR,
                         const std::string& gammaL, const std::string& gammaR,
                         const std::map<std::string, double>& constants) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("interface alpha must lie strictly inside (0,1), got " + std::to_string(alpha));
  }
  ExampleSpec s;
  s.name = std::move(name);
  s.alpha = alpha;
  s.uL = parse_expression(uL, constants);
  s.uR = parse_expression(uR, constants);
  s.gammaL = parse_expression(gammaL, constants);
  s.gammaR = parse_expression(gammaR, constants);
  s.validate();
  return s;
}

namespace {

constexpr const char* kOscillating = "exp(sin(5*pi*x))";
constexpr const char* kGaussian = "exp(x^2)";
constexpr const char* kSoft = "3+cos(5*pi*x)";
constexpr const char* kStiff = "10^9*(10+sin(5*pi*x))";

}  // namespace

ExampleSpec preset(const std::string& name, double p) {
  if (name == "example1") return make_example(name, 0.343, kOscillating, kGaussian, kSoft, kStiff);
  if (name == "example2") return make_example(name, 0.743, kOscillating, kGaussian, kSoft, kStiff);
  if (name == "example3") return make_example(name, 0.283, kOscillating, kGaussian, kStiff, kSoft);
  if (name == "example4") return make_example(name, 0.813, kGaussian, kOscillating, kStiff, kSoft);
  if (name == "jump_study") return make_example(name, 0.543, "0", "0", "10^p", "1", {{"p", p}});
  throw ConfigError("unknown example '" + name + "'");
}

std::vector<std::string> preset_names() { return {"example1", "example2", "example3", "example4", "jump_study"}; }

SynthesizedProblem synthesize_problem(const ExampleSpec& spec, const GridSpec& grid) {
  if (grid.alpha() != spec.alpha) throw ConfigError("grid interface does not match the example");
  const int J = grid.j();
  const int n = grid.n();

  std::vector<double> gl, gr;
  for (int i = 0; i <= J; ++i) gl.push_back(spec.gammaL.eval(grid.x(i)));
  for (int i = J + 1; i <= n + 1; ++i) gr.push_back(spec.gammaR.eval(grid.x(i)));

  SynthesizedProblem out;
  ProblemData& p = out.problem;
  p.gamma = extrapolate_gamma(gl, gr, grid);
  p.f = InteriorField(grid);
  auto source = [](const ExpressionTree& u, const ExpressionTree& g, double x) {
    const Jet2 uj = u.eval_jet(x);
    const Jet2 gj = g.eval_jet(x);
    return -(gj.d1 * uj.d1 + gj.value * uj.d2);
  };
  for (int j = 1; j <= J; ++j) p.f.left(j) = source(spec.uL, spec.gammaL, grid.x(j));
  for (int j = J + 1; j <= n; ++j) p.f.right(j) = source(spec.uR, spec.gammaR, grid.x(j));
  p.g0 = spec.uL.eval(0.0);
  p.g1 = spec.uR.eval(1.0);

  const double a = spec.alpha;
  const Jet2 ul = spec.uL.eval_jet(a);
  const Jet2 ur = spec.uR.eval_jet(a);
  p.gD = ur.value - ul.value;
  p.gN = spec.gammaR.eval(a) * ur.d1 - spec.gammaL.eval(a) * ul.d1;

  out.exact.u = TwoSidedField(grid);
  out.exact.du = TwoSidedField(grid);
  for (int i = 0; i <= J + 1; ++i) {
    const Jet2 v = spec.uL.eval_jet(grid.x(i));
    out.exact.u.left(i) = v.value;
    out.exact.du.left(i) = v.d1;
  }
  for (int i = J; i <= n + 1; ++i) {
    const Jet2 v = spec.uR.eval_jet(grid.x(i));
    out.exact.u.right(i) = v.value;
    out.exact.du.right(i) = v.d1;
  }
  return out;
}

SynthesizedProblem synthesize_problem(const ExampleSpec& spec, int intervals) {
  return synthesize_problem(spec, GridSpec(intervals - 1, spec.alpha));
}

TwoSidedField discrete_derivative(const TwoSidedField& u) {
  const GridSpec& g = u.grid();
  const int J = g.j();
  const int n = g.n();
  const double inv2h = 1.0 / (2.0 * g.h());
  TwoSidedField du(g);
  du.left(0) = (-3.0 * u.left(0) + 4.0 * u.left(1) - u.left(2)) * inv2h;
  for (int j = 1; j <= J; ++j) du.left(j) = (u.left(j + 1) - u.left(j - 1)) * inv2h;
  du.left(J + 1) = (3.0 * u.left(J + 1) - 4.0 * u.left(J) + u.left(J - 1)) * inv2h;

  du.right(J) = (-3.0 * u.right(J) + 4.0 * u.right(J + 1) - u.right(J + 2)) * inv2h;
  for (int j = J + 1; j <= n; ++j) du.right(j) = (u.right(j + 1) - u.right(j - 1)) * inv2h;
  du.right(n + 1) = (3.0 * u.right(n + 1) - 4.0 * u.right(n) + u.right(n - 1)) * inv2h;
  return du;
}

ErrorNorms error_norms(const TwoSidedField& u, const ExactSolution& exact) {
  const GridSpec& g = u.grid();
  const TwoSidedField du = discrete_derivative(u);
  ErrorNorms e;
  for (int j = 0; j <= g.j(); ++j) {
    e.eu = std::max(e.eu, std::abs(u.left(j) - exact.u.left(j)));
    e.edu = std::max(e.edu, std::abs(du.left(j) - exact.du.left(j)));
  }
  for (int j = g.j() + 1; j <= g.n() + 1; ++j) {
    e.eu = std::max(e.eu, std::abs(u.right(j) - exact.u.right(j)));
    e.edu = std::max(e.edu, std::abs(du.right(j) - exact.du.right(j)));
  }
  return e;
}

ConvergenceOrders convergence_orders(const std::vector<std::pair<int, double>>& errors) {
  if (errors.size() < 2) throw ConfigError("convergence orders need at least two rows");
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i].second > 0.0)) throw ConfigError("errors must be positive to take logarithms");
    if (i > 0 && errors[i].first != 2 * errors[i - 1].first) {
      throw ConfigError("N+1 must double from row to row");
    }
  }
  ConvergenceOrders out;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    out.row_orders.push_back(std::log2(errors[i - 1].second / errors[i].second));
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(errors.size());
  for (const auto& [intervals, e] : errors) {
    const double lx = std::log(1.0 / intervals);
    const double ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

}  // namespace gfmg
