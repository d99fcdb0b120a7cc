#ifndef NEHARI_SOLVER_HPP
#define NEHARI_SOLVER_HPP

#include <cstdint>
#include <span>

#include "nehari/functionals.hpp"
#include "nehari/radial_grid.hpp"

namespace nehari {

/// Residuals of the variational identities that obstruct solutions on
/// star-shaped domains. Each identity_* is left-minus-right of the
/// corresponding integral identity; `combined` is the scalar whose
/// vanishing forces lambda > 0.
struct PohozaevReport {
  double identity_u = 0.0;
  double identity_v = 0.0;
  double combined = 0.0;
  double boundary_u = 0.0; // integral over the sphere of |du/dn|^2 x.n
  double boundary_v = 0.0;
};

struct SolveOptions {
  double tol = 1e-8;          // max-norm tolerance on the nodal residual
  int max_iterations = 5000;  // projected-gradient iteration budget
  int clamp_every = 25;       // positive-part clamp cadence
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  std::uint64_t seed = 0;     // perturbation noise stream
  bool newton_polish = true;  // finish with Newton on the full system
  int newton_max = 60;
};

struct SolveReport {
  double B_num = 0.0;        // converged constrained minimum of the energy
  RadialPair pair;
  double el_residual = 0.0;  // max-norm of the nodal strong-form residual
  double H_residual = 0.0;
  bool positive = false;
  int iterations = 0;
  PohozaevReport pohozaev;
  double lambda_1 = 0.0;     // principal eigenvalue of the grid
};

/// Minimize the positive-part energy over the scaled constraint set:
/// preconditioned gradient steps with Armijo backtracking, a positive-part
/// clamp every `clamp_every` iterations, reprojection after every step, and
/// an optional Newton polish on the full optimality system.
SolveReport ground_state_solve(const RadialBall& grid, double lambda, double mu,
                               const SolveOptions& opts = {});

PohozaevReport pohozaev_report(const RadialBall& grid, const RadialPair& pair,
                               double lambda, double mu);

/// (lambda_1 - lambda) * <u, phi_1> - <(u_+)^{2*-2} v, phi_1>. Zero on exact
/// solutions; strictly negative for nonnegative candidates with
/// lambda >= lambda_1.
double eigenfunction_obstruction(const RadialBall& grid, const RadialPair& pair,
                                 double lambda);

struct MountainPassOptions {
  double plateau_fraction = 0.4; // cutoff plateau radius / R
  double support_fraction = 0.8; // cutoff support radius / R
};

/// min over eps of max over t of the energy along scaled cutoff-instanton
/// pairs; an upper bound for the mountain-pass level.
double mountain_pass_upper_bound(const RadialBall& grid, double lambda, double mu,
                                 std::span<const double> eps_list,
                                 const MountainPassOptions& opts = {});

} // namespace nehari

#endif
