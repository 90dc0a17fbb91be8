#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfmg {

/// Raised for any invalid grid, problem or solver configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Side { left, right };

/// Uniform vertex-centred grid on [0,1] with N interior nodes and an
/// interface at alpha, x_J <= alpha < x_{J+1}.
class GridSpec {
 public:
  /// Throws ConfigError unless 0 < alpha < 1, N >= 7 and 2 <= J <= N-2.
  GridSpec(int n, double alpha);

  int n() const { return n_; }
  int intervals() const { return n_ + 1; }
  double h() const { return h_; }
  double alpha() const { return alpha_; }
  int j() const { return j_; }
  double theta() const { return theta_; }
  double x(int i) const { return i * h_; }

  bool operator==(const GridSpec&) const = default;

 private:
  int n_;
  double h_;
  double alpha_;
  int j_;
  double theta_;
};

/// Builds the grid from the number of interior nodes N.
GridSpec build_grid(int n, double alpha);

/// Values on nodes 0..J+1 (left, ghost at J+1) and J..N+1 (right, ghost at J).
/// Each side is stored with its own offset; indices J and J+1 exist on both
/// sides independently.
class TwoSidedField {
 public:
  TwoSidedField() = default;
  explicit TwoSidedField(const GridSpec& grid, double fill = 0.0);

  const GridSpec& grid() const { return grid_; }

  double& left(int i) { return left_.at(static_cast<std::size_t>(i)); }
  double left(int i) const { return left_.at(static_cast<std::size_t>(i)); }
  double& right(int i) { return right_.at(static_cast<std::size_t>(i - grid_.j())); }
  double right(int i) const { return right_.at(static_cast<std::size_t>(i - grid_.j())); }
  double& at(Side s, int i) { return s == Side::left ? left(i) : right(i); }
  double at(Side s, int i) const { return s == Side::left ? left(i) : right(i); }

  int left_begin() const { return 0; }
  int left_end() const { return grid_.j() + 2; }
  int right_begin() const { return grid_.j(); }
  int right_end() const { return grid_.n() + 2; }

  std::span<double> left_values() { return left_; }
  std::span<const double> left_values() const { return left_; }
  std::span<double> right_values() { return right_; }
  std::span<const double> right_values() const { return right_; }

  /// Max abs over every stored entry, ghosts included.
  double max_abs() const;

  TwoSidedField& operator+=(const TwoSidedField& other);
  TwoSidedField& operator-=(const TwoSidedField& other);

  bool operator==(const TwoSidedField&) const = default;

 private:
  GridSpec grid_{7, 0.5};
  std::vector<double> left_;
  std::vector<double> right_;
};

/// Values on interior nodes only: 1..J on the left, J+1..N on the right.
class InteriorField {
 public:
  InteriorField() = default;
  explicit InteriorField(const GridSpec& grid, double fill = 0.0);

  const GridSpec& grid() const { return grid_; }

  double& left(int i) { return left_.at(static_cast<std::size_t>(i - 1)); }
  double left(int i) const { return left_.at(static_cast<std::size_t>(i - 1)); }
  double& right(int i) { return right_.at(static_cast<std::size_t>(i - grid_.j() - 1)); }
  double right(int i) const { return right_.at(static_cast<std::size_t>(i - grid_.j() - 1)); }

  /// Interior node i in 1..N, routed to the side that owns it.
  double& operator[](int i) { return i <= grid_.j() ? left(i) : right(i); }
  double operator[](int i) const { return i <= grid_.j() ? left(i) : right(i); }

  double max_abs() const;

  bool operator==(const InteriorField&) const = default;

 private:
  GridSpec grid_{7, 0.5};
  std::vector<double> left_;
  std::vector<double> right_;
};

/// Discrete data of -(gamma u')' = f with u(0)=g0, u(1)=g1, [u]=gD, [gamma u']=gN.
/// gamma carries the extrapolated ghost coefficients.
struct ProblemData {
  TwoSidedField gamma;
  InteriorField f;
  double g0 = 0.0;
  double g1 = 0.0;
  double gD = 0.0;
  double gN = 0.0;

  const GridSpec& grid() const { return gamma.grid(); }

  /// Throws ConfigError if the fields live on different grids or gamma <= 0.
  void validate() const;
};

/// Reflects a field through x -> 1-x; left and right swap roles.
TwoSidedField mirror_field(const TwoSidedField& u);

/// The same problem posed under x -> 1-x.
ProblemData mirror_problem(const ProblemData& p);

}  // namespace gfmg
