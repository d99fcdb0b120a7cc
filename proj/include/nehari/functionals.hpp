#ifndef NEHARI_FUNCTIONALS_HPP
#define NEHARI_FUNCTIONALS_HPP

#include <array>
#include <span>
#include <vector>

#include "nehari/radial_grid.hpp"

namespace nehari {

/// Nodal values of a candidate pair (u, v) on a radial grid.
struct RadialPair {
  std::vector<double> u, v;
};

/// All functional values and stored norms for one pair.
/// J, H, G and `admissible` follow the |u| conventions of the energy;
/// J_plus and the *_plus norms use the positive-part conventions.
struct FunctionalReport {
  double J = 0.0;
  double J_plus = 0.0;
  double H = 0.0;
  std::array<double, 2> G = {0.0, 0.0};
  bool admissible = false;
  double dirichlet_u = 0.0;
  double l2_u = 0.0;
  double dirichlet_v = 0.0;
  double critical_v = 0.0;       // integral |v|^{2*}
  double critical_v_plus = 0.0;  // integral (v_+)^{2*}
  double mixed = 0.0;            // integral |u|^{2*-1} v
  double mixed_plus = 0.0;       // integral (u_+)^{2*-1} v
};

FunctionalReport evaluate(const RadialBall& grid, const RadialPair& pair, double lambda,
                          double mu);

/// Nodal residual of the strong form (the Riesz representative of the
/// derivative of J_plus in the weighted nodal inner product):
///   g_u = -Lap u - lambda u - (u_+)^{2*-2} v
///   g_v = (-Lap v - mu (v_+)^{2*-1} - (u_+)^{2*-1}) / (2*-1)
RadialPair gradient_Jplus(const RadialBall& grid, const RadialPair& pair, double lambda,
                          double mu);

/// J(t u, t v) = t^2/2 * quadratic - t^{2*} * nonlinear; the exact fiber
/// decomposition of the energy along the scaling direction.
struct FiberCoefficients {
  double quadratic = 0.0;
  double nonlinear = 0.0;
};

FiberCoefficients fiber_coefficients(const RadialBall& grid, const RadialPair& pair,
                                     double lambda, double mu);

struct Projection {
  double t_bar = 0.0;
  RadialPair pair;
};

/// Scale an admissible pair onto the constraint set H = 0. Throws
/// RegimeError for non-admissible pairs or a nonpositive quadratic part.
Projection nehari_project(const RadialBall& grid, const RadialPair& pair, double lambda,
                          double mu);

/// Constraint-set member built from a positive profile by solving the
/// sigma-shifted coupling equation; both components of G vanish on the
/// result. Throws RegimeError if the shifted equation has no positive root
/// or lambda is outside (0, lambda_1).
RadialPair nehari_seed(const RadialBall& grid, std::span<const double> u_profile,
                       double lambda, double mu);

} // namespace nehari

#endif
