#pragma once

#include <array>
#include <span>
#include <vector>

#include "gfmg/banded.hpp"
#include "gfmg/grid.hpp"

namespace gfmg {

/// Linear extrapolation of the coefficient to each side's ghost node:
///   gamma^L_{J+1} = 2 gamma^L_J - gamma^L_{J-1},  gamma^R_J = 2 gamma^R_{J+1} - gamma^R_{J+2}.
/// `left` holds samples on nodes 0..J, `right` on J+1..N+1.
/// Throws ConfigError if a sample or an extrapolated ghost is not positive.
TwoSidedField extrapolate_gamma(std::span<const double> left, std::span<const double> right,
                                const GridSpec& grid);

/// Re-extrapolates the two ghost entries of an existing coefficient field in place.
void refresh_gamma_ghosts(TwoSidedField& gamma);

/// gamma_{j+1/2} = (gamma_j + gamma_{j+1}) / 2, both taken from `side`.
double half_point_gamma(const TwoSidedField& gamma, Side side, int j);

/// L_h(gamma, u): (1/h^2)[g_{j-1/2}(u_j - u_{j-1}) + g_{j+1/2}(u_j - u_{j+1})],
/// evaluated strictly within the side owning node j.
InteriorField apply_operator(const TwoSidedField& gamma, const TwoSidedField& u);

/// Interpolation weights for the two interface conditions at alpha.
///
/// Dirichlet: linear interpolation between nodes J and J+1 on each side.
/// Flux: derivative at alpha of the quadratic interpolant through
/// {x_{J-1}, x_J, x_{J+1}} (left) and {x_J, x_{J+1}, x_{J+2}} (right); each
/// triple contains its own side's ghost node.
struct InterfaceStencil {
  double theta = 0.0;
  std::array<double, 2> dirichlet_left{};   // on u^L_J, u^L_{J+1}
  std::array<double, 2> dirichlet_right{};  // on u^R_J, u^R_{J+1}
  std::array<double, 3> flux_left{};        // on u^L_{J-1}, u^L_J, u^L_{J+1}
  std::array<double, 3> flux_right{};       // on u^R_J, u^R_{J+1}, u^R_{J+2}
  double gamma_left_alpha = 0.0;
  double gamma_right_alpha = 0.0;
};

InterfaceStencil build_interface_stencil(const TwoSidedField& gamma, const GridSpec& grid);

/// Derivative at alpha of the left/right quadratic interpolants.
double left_flux_derivative(const TwoSidedField& u, const InterfaceStencil& st);
double right_flux_derivative(const TwoSidedField& u, const InterfaceStencil& st);

/// [u]^D_h = interpolated u^R(alpha) - interpolated u^L(alpha).
double jump_dirichlet(const TwoSidedField& u, const InterfaceStencil& st);

/// [gamma, u]^N_h = gamma^R_alpha L'[u^R](alpha) - gamma^L_alpha L'[u^L](alpha).
double jump_flux(const TwoSidedField& u, const InterfaceStencil& st);

struct DefectBundle {
  InteriorField interior;
  double dD = 0.0;
  double dN = 0.0;
  double d0 = 0.0;
  double d1 = 0.0;
};

/// r = f - L_h u, dD = gD - [u]^D, dN = gN - [u]^N, d0 = g0 - u^L_0, d1 = g1 - u^R_{N+1}.
DefectBundle compute_defect(const ProblemData& p, const TwoSidedField& u);

/// Position of an unknown in the assembled system:
/// u^L_0..u^L_{J+1} -> 0..J+1, u^R_J..u^R_{N+1} -> J+2..N+3.
int unknown_index(const GridSpec& grid, Side side, int node);

/// The (N+4)x(N+4) ghost-fluid system. Row k holds the equation that the
/// relaxation uses to update unknown k: boundary rows at the two ends,
/// the flux condition on the left ghost row and the Dirichlet condition on the
/// right ghost row. Band: 2 below, 3 above the diagonal.
struct AssembledSystem {
  BandMatrix matrix;
  std::vector<double> rhs;
};

AssembledSystem assemble_system(const ProblemData& p);

/// Right-hand side of the assembled system alone (matrix depends only on gamma).
std::vector<double> assemble_rhs(const ProblemData& p);

std::vector<double> to_vector(const TwoSidedField& u);
TwoSidedField from_vector(const GridSpec& grid, std::span<const double> v);

/// Direct banded solve of the assembled system.
TwoSidedField solve_direct(const ProblemData& p);

}  // namespace gfmg
