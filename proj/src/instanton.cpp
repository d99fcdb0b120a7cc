#include "nehari/instanton.hpp"

#include <cmath>
#include <stdexcept>

#include "nehari/dimension.hpp"
#include "nehari/errors.hpp"

namespace nehari {

namespace {

void validate(const Instanton& inst) {
  if (!(inst.epsilon > 0.0)) throw std::invalid_argument("instanton: epsilon > 0 required");
  Dimension dim(inst.N);
}

// Evaluate with the scheme and once more with doubled node count; reject
// if the refinement moves the value beyond 1e-8 relative.
double checked_integral(const std::function<double(double)>& g, int N, double scale,
                        const QuadratureScheme& scheme) {
  const double coarse = radial_integral(g, N, scale, scheme);
  QuadratureScheme fine = scheme;
  fine.node_count = 2 * scheme.node_count;
  const double refined = radial_integral(g, N, scale, fine);
  if (std::abs(refined - coarse) > 1e-8 * std::abs(refined))
    throw ConvergenceError("radial quadrature did not settle under refinement");
  return refined;
}

} // namespace

double instanton_prefactor(int N) {
  Dimension dim(N);
  return std::pow(static_cast<double>(N) * (N - 2), 0.25 * (N - 2));
}

double instanton_value(const Instanton& inst, double r) {
  validate(inst);
  if (!(r >= 0.0)) throw std::invalid_argument("instanton_value: r >= 0 required");
  const double p = 0.5 * (inst.N - 2);
  return instanton_prefactor(inst.N) *
         std::pow(inst.epsilon / (inst.epsilon * inst.epsilon + r * r), p);
}

double instanton_radial_derivative(const Instanton& inst, double r) {
  validate(inst);
  const double p = 0.5 * (inst.N - 2);
  const double q = inst.epsilon * inst.epsilon + r * r;
  return -2.0 * p * r * instanton_prefactor(inst.N) * std::pow(inst.epsilon, p) *
         std::pow(q, -p - 1.0);
}

double instanton_radial_laplacian(const Instanton& inst, double r) {
  validate(inst);
  // u'' + (N-1) u'/r collapses to -N(N-2) eps^2 c_N eps^p (eps^2+r^2)^(-p-2)
  const double p = 0.5 * (inst.N - 2);
  const double q = inst.epsilon * inst.epsilon + r * r;
  return -static_cast<double>(inst.N) * (inst.N - 2) * inst.epsilon * inst.epsilon *
         instanton_prefactor(inst.N) * std::pow(inst.epsilon, p) * std::pow(q, -p - 2.0);
}

double dirichlet_norm(const Instanton& inst, const QuadratureScheme& scheme) {
  validate(inst);
  auto g = [&](double r) {
    const double du = instanton_radial_derivative(inst, r);
    return du * du;
  };
  return checked_integral(g, inst.N, inst.epsilon, scheme);
}

double critical_norm(const Instanton& inst, const QuadratureScheme& scheme) {
  validate(inst);
  const double ts = Dimension(inst.N).ts();
  auto g = [&](double r) { return std::pow(instanton_value(inst, r), ts); };
  return checked_integral(g, inst.N, inst.epsilon, scheme);
}

double limit_energy(double k, double l, double mu, const Instanton& inst,
                    const QuadratureScheme& scheme) {
  validate(inst);
  const double tsm1 = Dimension(inst.N).two_star_minus(1).value();
  const double ts = Dimension(inst.N).ts();
  const double dir = dirichlet_norm(inst, scheme);
  const double crit = critical_norm(inst, scheme);
  return 0.5 * k * k * dir + 0.5 * l * l / tsm1 * dir -
         mu / (ts * tsm1) * std::pow(l, ts) * crit -
         std::pow(k, ts - 1.0) * l / tsm1 * crit;
}

std::array<double, 2> nehari0_residual(double k, double l, double mu, const Instanton& inst,
                                       const QuadratureScheme& scheme) {
  validate(inst);
  const double ts = Dimension(inst.N).ts();
  const double dir = dirichlet_norm(inst, scheme);
  const double crit = critical_norm(inst, scheme);
  const double mixed = std::pow(k, ts - 1.0) * l * crit;
  return {k * k * dir - mixed, l * l * dir - mu * std::pow(l, ts) * crit - mixed};
}

double cutoff_ramp(double r, double R_plateau, double R_support) {
  if (!(0.0 < R_plateau && R_plateau < R_support))
    throw std::invalid_argument("cutoff_ramp: 0 < R_plateau < R_support required");
  if (r <= R_plateau) return 1.0;
  if (r >= R_support) return 0.0;
  const double s = (r - R_plateau) / (R_support - R_plateau);
  return 1.0 + s * s * (2.0 * s - 3.0); // Hermite ramp, zero slope at both ends
}

double cutoff_profile(const Instanton& inst, double R_plateau, double R_support, double r) {
  if (r >= R_support) return 0.0;
  return cutoff_ramp(r, R_plateau, R_support) * instanton_value(inst, r);
}

double cutoff_l2_norm(const Instanton& inst, double R_plateau, double R_support,
                      const QuadratureScheme& scheme) {
  validate(inst);
  QuadratureScheme trunc = scheme;
  trunc.truncation_radius = R_support;
  auto g = [&](double r) {
    const double u = cutoff_profile(inst, R_plateau, R_support, r);
    return u * u;
  };
  return radial_integral(g, inst.N, inst.epsilon, trunc);
}

CutoffScalingFit cutoff_l2_scaling(int N, std::span<const double> eps_list,
                                   double R_plateau, double R_support) {
  Dimension dim(N);
  if (eps_list.size() < 4)
    throw std::invalid_argument("cutoff_l2_scaling: at least 4 epsilon samples required");

  const std::size_t n = eps_list.size();
  std::vector<double> y(n), le(n), ll(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = eps_list[i];
    if (!(eps > 0.0 && eps < 1.0))
      throw std::invalid_argument("cutoff_l2_scaling: eps in (0,1) required");
    y[i] = std::log(cutoff_l2_norm(Instanton{eps, N}, R_plateau, R_support));
    le[i] = std::log(eps);
    ll[i] = std::log(-std::log(eps));
  }

  // normal equations for models [1, log eps] and [1, log eps, log|log eps|]
  auto solve_normal = [&](bool with_log, double* coef) {
    const int p = with_log ? 3 : 2;
    double A[3][3] = {{0}}, b[3] = {0};
    for (std::size_t i = 0; i < n; ++i) {
      const double row[3] = {1.0, le[i], ll[i]};
      for (int a = 0; a < p; ++a) {
        b[a] += row[a] * y[i];
        for (int c = 0; c < p; ++c) A[a][c] += row[a] * row[c];
      }
    }
    for (int col = 0; col < p; ++col) { // Gaussian elimination, partial pivot
      int piv = col;
      for (int r2 = col + 1; r2 < p; ++r2)
        if (std::abs(A[r2][col]) > std::abs(A[piv][col])) piv = r2;
      std::swap(A[col], A[piv]);
      std::swap(b[col], b[piv]);
      for (int r2 = col + 1; r2 < p; ++r2) {
        const double f = A[r2][col] / A[col][col];
        for (int c = col; c < p; ++c) A[r2][c] -= f * A[col][c];
        b[r2] -= f * b[col];
      }
    }
    for (int r2 = p - 1; r2 >= 0; --r2) {
      double s = b[r2];
      for (int c = r2 + 1; c < p; ++c) s -= A[r2][c] * coef[c];
      coef[r2] = s / A[r2][r2];
    }
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fit = coef[0] + coef[1] * le[i] + (with_log ? coef[2] * ll[i] : 0.0);
      rss += (y[i] - fit) * (y[i] - fit);
    }
    return rss;
  };

  double c2[3] = {0}, c3[3] = {0};
  CutoffScalingFit fit;
  fit.rss_plain = solve_normal(false, c2);
  fit.rss_log = solve_normal(true, c3);
  fit.exponent_plain = c2[1];
  fit.log_term_used = (N == 4);
  fit.exponent = fit.log_term_used ? c3[1] : c2[1];
  return fit;
}

} // namespace nehari
