#include "gfmg/grid.hpp"

#include <algorithm>
#include <cmath>

namespace gfmg {

GridSpec::GridSpec(int n, double alpha) : n_(n), alpha_(alpha) {
  if (n < 7) {
    throw ConfigError("grid needs N >= 7 interior nodes, got N=" + std::to_string(n));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("interface alpha must lie strictly inside (0,1), got " +
                      std::to_string(alpha));
  }
  h_ = 1.0 / (n + 1);
  // alpha*(N+1) instead of alpha/h: exact when alpha sits on a node.
  const double scaled = alpha * (n + 1);
  j_ = static_cast<int>(std::floor(scaled));
  theta_ = scaled - j_;
  if (j_ < 2 || j_ > n - 2) {
    throw ConfigError("interface alpha=" + std::to_string(alpha) + " gives J=" + std::to_string(j_) +
                      " on a grid with N=" + std::to_string(n) +
                      "; each subdomain needs 2 <= J <= N-2");
  }
}

GridSpec build_grid(int n, double alpha) { return GridSpec(n, alpha); }

TwoSidedField::TwoSidedField(const GridSpec& grid, double fill)
    : grid_(grid),
      left_(static_cast<std::size_t>(grid.j() + 2), fill),
      right_(static_cast<std::size_t>(grid.n() + 2 - grid.j()), fill) {}

double TwoSidedField::max_abs() const {
  double m = 0.0;
  for (double v : left_) m = std::max(m, std::abs(v));
  for (double v : right_) m = std::max(m, std::abs(v));
  return m;
}

TwoSidedField& TwoSidedField::operator+=(const TwoSidedField& other) {
  for (std::size_t i = 0; i < left_.size(); ++i) left_[i] += other.left_.at(i);
  for (std::size_t i = 0; i < right_.size(); ++i) right_[i] += other.right_.at(i);
  return *this;
}

TwoSidedField& TwoSidedField::operator-=(const TwoSidedField& other) {
  for (std::size_t i = 0; i < left_.size(); ++i) left_[i] -= other.left_.at(i);
  for (std::size_t i = 0; i < right_.size(); ++i) right_[i] -= other.right_.at(i);
  return *this;
}

InteriorField::InteriorField(const GridSpec& grid, double fill)
    : grid_(grid),
      left_(static_cast<std::size_t>(grid.j()), fill),
      right_(static_cast<std::size_t>(grid.n() - grid.j()), fill) {}

double InteriorField::max_abs() const {
  double m = 0.0;
  for (double v : left_) m = std::max(m, std::abs(v));
  for (double v : right_) m = std::max(m, std::abs(v));
  return m;
}

void ProblemData::validate() const {
  if (!(f.grid() == gamma.grid())) {
    throw ConfigError("problem fields are defined on different grids");
  }
  for (double g : gamma.left_values()) {
    if (!(g > 0.0)) throw ConfigError("coefficient gamma must be positive on the left side");
  }
  for (double g : gamma.right_values()) {
    if (!(g > 0.0)) throw ConfigError("coefficient gamma must be positive on the right side");
  }
}

namespace {

GridSpec mirrored_grid(const GridSpec& g) {
  GridSpec m(g.n(), 1.0 - g.alpha());
  // With the interface on a node the half-open convention x_J <= alpha breaks
  // the reflection symmetry.
  if (m.j() != g.n() - g.j()) {
    throw ConfigError("mirroring needs the interface strictly between two nodes");
  }
  return m;
}

}  // namespace

TwoSidedField mirror_field(const TwoSidedField& u) {
  const GridSpec& g = u.grid();
  const GridSpec m = mirrored_grid(g);
  const int np1 = g.n() + 1;
  TwoSidedField out(m);
  for (int i = out.left_begin(); i < out.left_end(); ++i) out.left(i) = u.right(np1 - i);
  for (int i = out.right_begin(); i < out.right_end(); ++i) out.right(i) = u.left(np1 - i);
  return out;
}

ProblemData mirror_problem(const ProblemData& p) {
  const GridSpec& g = p.grid();
  const int np1 = g.n() + 1;
  ProblemData out;
  out.gamma = mirror_field(p.gamma);
  const GridSpec& m = out.gamma.grid();
  out.f = InteriorField(m);
  for (int i = 1; i <= m.j(); ++i) out.f.left(i) = p.f.right(np1 - i);
  for (int i = m.j() + 1; i <= m.n(); ++i) out.f.right(i) = p.f.left(np1 - i);
  out.g0 = p.g1;
  out.g1 = p.g0;
  out.gD = -p.gD;
  out.gN = p.gN;
  return out;
}

}  // namespace gfmg
