#ifndef NEHARI_RADIAL_GRID_HPP
#define NEHARI_RADIAL_GRID_HPP

#include <span>
#include <vector>

namespace nehari {

/// Uniform radial grid on a ball of radius R in R^N: interior nodes
/// r_i = i h, i = 1..M, h = R/(M+1), Dirichlet value 0 at r = R and even
/// symmetry at the origin (the origin value is eliminated through the
/// second-order extrapolation u(0) = (4 u_1 - u_2)/3).
///
/// The discrete Dirichlet energy is the midpoint-flux form
///   Q(u) = omega_{N-1} h * sum_i r_{i+1/2}^{N-1} ((u_{i+1}-u_i)/h)^2,
/// and all L^p integrals are the weighted nodal sums with weights
/// w_i = omega_{N-1} r_i^{N-1} h. The stiffness matrix below is the exact
/// Hessian of Q/2, so energies, gradients and the eigenproblem are
/// mutually consistent by construction.
class RadialBall {
public:
  RadialBall(double R, int M, int N);

  double R() const { return R_; }
  int M() const { return M_; }
  int N() const { return N_; }
  double h() const { return h_; }
  std::span<const double> nodes() const { return r_; }
  std::span<const double> weights() const { return w_; }

  double origin_value(std::span<const double> u) const;

  /// y = K u with the tridiagonal stiffness matrix (Q(u) = u.K u).
  void apply_stiffness(std::span<const double> u, std::span<double> y) const;

  double dirichlet(std::span<const double> u) const;   // u.K u
  double inner(std::span<const double> u, std::span<const double> v) const; // weighted
  double l2(std::span<const double> u) const { return inner(u, u); }
  double lp(std::span<const double> u, double p) const; // sum w |u|^p
  double lp_positive(std::span<const double> u, double p) const; // sum w (u_+)^p

  std::span<const double> stiffness_diag() const { return kd_; }
  std::span<const double> stiffness_off() const { return ko_; }

private:
  double R_;
  int M_;
  int N_;
  double h_;
  std::vector<double> r_, w_, kd_, ko_;
};

/// Prefactored tridiagonal system (Thomas algorithm, no pivoting; intended
/// for the SPD matrices arising here).
class TridiagonalSolver {
public:
  TridiagonalSolver(std::span<const double> diag, std::span<const double> off);
  void solve(std::span<double> rhs) const;

private:
  std::vector<double> d_, l_, u_;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> eigenfunction; // positive, normalized to ||.||_2 = 1
};

/// Principal Dirichlet eigenvalue of the discrete radial Laplacian, by
/// inverse power iteration with a Rayleigh-quotient polish. Throws
/// ConvergenceError after 10^4 stagnating iterations.
EigenPair lambda1(const RadialBall& grid);

} // namespace nehari

#endif
