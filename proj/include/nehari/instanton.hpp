#ifndef NEHARI_INSTANTON_HPP
#define NEHARI_INSTANTON_HPP

#include <array>
#include <span>
#include <vector>

#include "nehari/quadrature.hpp"

namespace nehari {

/// Radial extremal of the critical Sobolev inequality on R^N,
///   U(x) = c_N (eps / (eps^2 + |x - y|^2))^((N-2)/2),
/// c_N = [N(N-2)]^((N-2)/4), the normalization for which -Lap U = U^(2*-1).
/// Only |x - y| enters any radial computation; `center` is carried for
/// bookkeeping and may be empty (origin).
struct Instanton {
  double epsilon = 1.0;
  int N = 4;
  std::vector<double> center = {};
};

double instanton_prefactor(int N);
double instanton_value(const Instanton& inst, double r);
double instanton_radial_derivative(const Instanton& inst, double r);
/// u'' + (N-1)/r u', the radial Laplacian, from the analytic derivatives.
double instanton_radial_laplacian(const Instanton& inst, double r);

/// Quadrature of the gradient norm; equals S^(N/2) for every eps.
/// Throws ConvergenceError if a node-count refinement moves the value by
/// more than 1e-8 relative.
double dirichlet_norm(const Instanton& inst, const QuadratureScheme& scheme = {});

/// Quadrature of the critical norm \int U^{2*}; also S^(N/2).
double critical_norm(const Instanton& inst, const QuadratureScheme& scheme = {});

/// Energy of the proportional pair (k U, l U) in the limit functional.
double limit_energy(double k, double l, double mu, const Instanton& inst,
                    const QuadratureScheme& scheme = {});

/// Both components of the limit Nehari constraint at (k U, l U); these
/// vanish exactly when (k, l) solves the coupling system.
std::array<double, 2> nehari0_residual(double k, double l, double mu, const Instanton& inst,
                                       const QuadratureScheme& scheme = {});

/// C^1 cubic-Hermite ramp: 1 on [0, R_plateau], 0 on [R_support, inf).
double cutoff_ramp(double r, double R_plateau, double R_support);

/// chi(r) * U(r), the compactly supported instanton truncation.
double cutoff_profile(const Instanton& inst, double R_plateau, double R_support, double r);

/// Squared L^2 norm of the truncated instanton (integral over the support).
double cutoff_l2_norm(const Instanton& inst, double R_plateau, double R_support,
                      const QuadratureScheme& scheme = {});

/// Least-squares fit of log ||chi U_eps||_2^2 against log eps, optionally
/// with a log|log eps| regressor (the N = 4 scaling carries that factor).
struct CutoffScalingFit {
  double exponent = 0.0;        // eps-exponent of the reported fit
  double exponent_plain = 0.0;  // two-parameter fit exponent
  double rss_plain = 0.0;       // residual sum of squares, two-parameter fit
  double rss_log = 0.0;         // residual with the log|log eps| term added
  bool log_term_used = false;   // whether `exponent` came from the log fit
};

CutoffScalingFit cutoff_l2_scaling(int N, std::span<const double> eps_list,
                                   double R_plateau, double R_support);

} // namespace nehari

#endif
