#include "nehari/radial_grid.hpp"

#include <cmath>
#include <stdexcept>

#include "nehari/errors.hpp"
#include "nehari/quadrature.hpp"

namespace nehari {

RadialBall::RadialBall(double R, int M, int N) : R_(R), M_(M), N_(N) {
  if (!(R > 0.0)) throw std::invalid_argument("RadialBall: R > 0 required");
  if (M < 64) throw std::invalid_argument("RadialBall: M >= 64 required");
  if (N < 4) throw std::invalid_argument("RadialBall: N >= 4 required");
  h_ = R_ / (M_ + 1);
  const double om = surface_measure(N_);

  r_.resize(M_);
  w_.resize(M_);
  for (int i = 0; i < M_; ++i) {
    r_[i] = h_ * (i + 1);
    w_[i] = om * std::pow(r_[i], N_ - 1) * h_;
  }

  // flux coefficients a_{i+1/2} = r_{i+1/2}^{N-1}, intervals i = 0..M
  std::vector<double> a(M_ + 1);
  for (int i = 0; i <= M_; ++i) a[i] = std::pow(h_ * (i + 0.5), N_ - 1);

  kd_.assign(M_, 0.0);
  ko_.assign(M_ - 1, 0.0);
  const double c = om / h_;
  // origin interval: (u_1 - u(0)) = (u_2 - u_1)/3, so it contributes
  // a_{1/2}/9 * (u_2 - u_1)^2 to Q
  const double a0 = a[0] / 9.0;
  kd_[0] += c * a0;
  kd_[1] += c * a0;
  ko_[0] -= c * a0;
  for (int i = 1; i <= M_; ++i) { // interval between nodes i and i+1 (1-based)
    kd_[i - 1] += c * a[i];
    if (i < M_) {
      kd_[i] += c * a[i];
      ko_[i - 1] -= c * a[i];
    }
  }
}

double RadialBall::origin_value(std::span<const double> u) const {
  return (4.0 * u[0] - u[1]) / 3.0;
}

void RadialBall::apply_stiffness(std::span<const double> u, std::span<double> y) const {
  const int M = M_;
  for (int i = 0; i < M; ++i) {
    double s = kd_[i] * u[i];
    if (i > 0) s += ko_[i - 1] * u[i - 1];
    if (i + 1 < M) s += ko_[i] * u[i + 1];
    y[i] = s;
  }
}

double RadialBall::dirichlet(std::span<const double> u) const {
  double s = 0.0;
  for (int i = 0; i < M_; ++i) {
    s += kd_[i] * u[i] * u[i];
    if (i + 1 < M_) s += 2.0 * ko_[i] * u[i] * u[i + 1];
  }
  return s;
}

double RadialBall::inner(std::span<const double> u, std::span<const double> v) const {
  double s = 0.0;
  for (int i = 0; i < M_; ++i) s += w_[i] * u[i] * v[i];
  return s;
}

double RadialBall::lp(std::span<const double> u, double p) const {
  double s = 0.0;
  for (int i = 0; i < M_; ++i) s += w_[i] * std::pow(std::abs(u[i]), p);
  return s;
}

double RadialBall::lp_positive(std::span<const double> u, double p) const {
  double s = 0.0;
  for (int i = 0; i < M_; ++i)
    if (u[i] > 0.0) s += w_[i] * std::pow(u[i], p);
  return s;
}

TridiagonalSolver::TridiagonalSolver(std::span<const double> diag, std::span<const double> off) {
  const std::size_t n = diag.size();
  d_.assign(diag.begin(), diag.end());
  l_.assign(n, 0.0);
  u_.assign(off.begin(), off.end());
  for (std::size_t i = 1; i < n; ++i) {
    l_[i] = off[i - 1] / d_[i - 1];
    d_[i] -= l_[i] * off[i - 1];
  }
}

void TridiagonalSolver::solve(std::span<double> rhs) const {
  const std::size_t n = d_.size();
  for (std::size_t i = 1; i < n; ++i) rhs[i] -= l_[i] * rhs[i - 1];
  rhs[n - 1] /= d_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - u_[i] * rhs[i + 1]) / d_[i];
}

EigenPair lambda1(const RadialBall& grid) {
  const int M = grid.M();
  const auto w = grid.weights();
  TridiagonalSolver K(grid.stiffness_diag(), grid.stiffness_off());

  std::vector<double> x(M, 1.0), y(M);
  double lam = 0.0;
  bool converged = false;
  for (int it = 0; it < 10000; ++it) {
    for (int i = 0; i < M; ++i) y[i] = w[i] * x[i];
    K.solve(y);
    const double nrm = std::sqrt(grid.l2(y));
    for (int i = 0; i < M; ++i) y[i] /= nrm;
    const double lam_new = grid.dirichlet(y) / grid.l2(y);
    x.swap(y);
    if (it > 0 && std::abs(lam_new - lam) <= 1e-12 * lam_new) {
      lam = lam_new;
      converged = true;
      break;
    }
    lam = lam_new;
  }
  if (!converged) throw ConvergenceError("lambda1: inverse iteration stagnated");

  // Rayleigh-quotient polish: sharpen the eigenvector beyond the linear
  // rate of the plain inverse iteration
  for (int polish = 0; polish < 3; ++polish) {
    std::vector<double> kd(grid.stiffness_diag().begin(), grid.stiffness_diag().end());
    const double shift = lam * (1.0 - 1e-10);
    for (int i = 0; i < M; ++i) kd[i] -= shift * w[i];
    TridiagonalSolver shifted(kd, grid.stiffness_off());
    for (int i = 0; i < M; ++i) y[i] = w[i] * x[i];
    shifted.solve(y);
    const double nrm = std::sqrt(grid.l2(y));
    if (!std::isfinite(nrm) || nrm == 0.0) break;
    for (int i = 0; i < M; ++i) y[i] /= nrm;
    x = y;
    lam = grid.dirichlet(x) / grid.l2(x);
  }

  if (x[0] < 0.0)
    for (double& xi : x) xi = -xi;
  const double nrm = std::sqrt(grid.l2(x));
  for (double& xi : x) xi /= nrm;
  return {lam, std::move(x)};
}

} // namespace nehari
