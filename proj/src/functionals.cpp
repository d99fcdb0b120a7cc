#include "nehari/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "nehari/dimension.hpp"
#include "nehari/errors.hpp"
#include "nehari/limit_algebra.hpp"

namespace nehari {

namespace {

void check_pair(const RadialBall& grid, const RadialPair& pair) {
  if (static_cast<int>(pair.u.size()) != grid.M() ||
      static_cast<int>(pair.v.size()) != grid.M())
    throw std::invalid_argument("pair size does not match grid");
}

} // namespace

FunctionalReport evaluate(const RadialBall& grid, const RadialPair& pair, double lambda,
                          double mu) {
  check_pair(grid, pair);
  const Dimension dim(grid.N());
  const double ts = dim.ts();
  const double tsm1 = dim.two_star_minus(1).value();

  FunctionalReport rep;
  rep.dirichlet_u = grid.dirichlet(pair.u);
  rep.l2_u = grid.l2(pair.u);
  rep.dirichlet_v = grid.dirichlet(pair.v);
  rep.critical_v = grid.lp(pair.v, ts);
  rep.critical_v_plus = grid.lp_positive(pair.v, ts);

  const auto w = grid.weights();
  double mixed = 0.0, mixed_plus = 0.0;
  for (int i = 0; i < grid.M(); ++i) {
    const double ui = pair.u[i], vi = pair.v[i];
    mixed += w[i] * std::pow(std::abs(ui), ts - 1.0) * vi;
    if (ui > 0.0) mixed_plus += w[i] * std::pow(ui, ts - 1.0) * vi;
  }
  rep.mixed = mixed;
  rep.mixed_plus = mixed_plus;

  rep.J = 0.5 * rep.dirichlet_u - 0.5 * lambda * rep.l2_u + rep.dirichlet_v / (2.0 * tsm1) -
          mu * rep.critical_v / (ts * tsm1) - rep.mixed / tsm1;
  rep.J_plus = 0.5 * rep.dirichlet_u - 0.5 * lambda * rep.l2_u +
               rep.dirichlet_v / (2.0 * tsm1) - mu * rep.critical_v_plus / (ts * tsm1) -
               rep.mixed_plus / tsm1;
  rep.G[0] = rep.dirichlet_u - lambda * rep.l2_u - rep.mixed;
  rep.G[1] = rep.dirichlet_v - mu * rep.critical_v - rep.mixed;
  rep.H = rep.G[0] + rep.G[1] / tsm1;
  rep.admissible = (mu * rep.critical_v + ts * rep.mixed) > 0.0;
  return rep;
}

RadialPair gradient_Jplus(const RadialBall& grid, const RadialPair& pair, double lambda,
                          double mu) {
  check_pair(grid, pair);
  const Dimension dim(grid.N());
  const double ts = dim.ts();
  const double tsm1 = dim.two_star_minus(1).value();
  const int M = grid.M();
  const auto w = grid.weights();

  RadialPair g;
  g.u.resize(M);
  g.v.resize(M);
  grid.apply_stiffness(pair.u, g.u);
  grid.apply_stiffness(pair.v, g.v);
  for (int i = 0; i < M; ++i) {
    const double up = pair.u[i] > 0.0 ? pair.u[i] : 0.0;
    const double vp = pair.v[i] > 0.0 ? pair.v[i] : 0.0;
    const double up_pow = up > 0.0 ? std::pow(up, ts - 2.0) : 0.0;
    g.u[i] = g.u[i] / w[i] - lambda * pair.u[i] - up_pow * pair.v[i];
    g.v[i] = (g.v[i] / w[i] - mu * (vp > 0.0 ? std::pow(vp, ts - 1.0) : 0.0) -
              up_pow * up) / tsm1;
  }
  return g;
}

FiberCoefficients fiber_coefficients(const RadialBall& grid, const RadialPair& pair,
                                     double lambda, double mu) {
  const FunctionalReport rep = evaluate(grid, pair, lambda, mu);
  const Dimension dim(grid.N());
  const double ts = dim.ts();
  const double tsm1 = dim.two_star_minus(1).value();
  FiberCoefficients fc;
  fc.quadratic = rep.dirichlet_u - lambda * rep.l2_u + rep.dirichlet_v / tsm1;
  fc.nonlinear = mu * rep.critical_v / (ts * tsm1) + rep.mixed / tsm1;
  return fc;
}

Projection nehari_project(const RadialBall& grid, const RadialPair& pair, double lambda,
                          double mu) {
  check_pair(grid, pair);
  const Dimension dim(grid.N());
  const double ts = dim.ts();
  const double tsm1 = dim.two_star_minus(1).value();
  const FunctionalReport rep = evaluate(grid, pair, lambda, mu);

  const double quad = rep.dirichlet_u - lambda * rep.l2_u + rep.dirichlet_v / tsm1;
  const double denom = mu * rep.critical_v / tsm1 + ts * rep.mixed / tsm1;
  const double scale = rep.dirichlet_u + rep.dirichlet_v / tsm1;
  if (!rep.admissible || denom <= 1e-14 * std::max(1.0, scale))
    throw RegimeError("nehari_project: pair is not admissible");
  if (quad <= 0.0)
    throw RegimeError(
        "nehari_project: nonpositive quadratic part; lambda must lie below lambda_1");

  Projection pr;
  pr.t_bar = pow_rat(quad / denom, dim.inv_gap());
  pr.pair.u.resize(grid.M());
  pr.pair.v.resize(grid.M());
  for (int i = 0; i < grid.M(); ++i) {
    pr.pair.u[i] = pr.t_bar * pair.u[i];
    pr.pair.v[i] = pr.t_bar * pair.v[i];
  }
  return pr;
}

RadialPair nehari_seed(const RadialBall& grid, std::span<const double> u_profile,
                       double lambda, double mu) {
  if (static_cast<int>(u_profile.size()) != grid.M())
    throw std::invalid_argument("nehari_seed: profile size does not match grid");
  if (!(mu >= 0.0)) throw std::invalid_argument("nehari_seed: mu >= 0 required");
  const Dimension dim(grid.N());

  const double a = grid.dirichlet(u_profile);
  const double b = grid.l2(u_profile);
  const double T = grid.lp(u_profile, dim.ts());
  const double quad = a - lambda * b;
  if (quad <= 0.0)
    throw RegimeError("nehari_seed: lambda must lie below lambda_1 of the grid");

  const double sigma = a / quad;
  const double sigma_bar = quad / T;

  // m^(2*-1) - sigma m^(2*-3) + mu = 0 reduces to f_N under the scaling
  // m = sqrt(sigma) x with coupling mu / sigma^((2*-1)/2)
  const double mu_shifted =
      mu / pow_rat(sigma, Rational{grid.N() + 2LL, 2LL * (grid.N() - 2LL)});
  const auto roots = roots_fN(mu_shifted, grid.N());
  if (roots.empty())
    throw RegimeError("nehari_seed: shifted coupling equation has no positive root");
  const double m = std::sqrt(sigma) * roots.back().m;

  const double k = pow_rat(m * sigma_bar, dim.inv_gap());
  const double l = pow_rat(pow_rat(m, Rational{3, 1} - dim.two_star()) * sigma_bar,
                           dim.inv_gap());
  RadialPair out;
  out.u.resize(grid.M());
  out.v.resize(grid.M());
  for (int i = 0; i < grid.M(); ++i) {
    out.u[i] = k * u_profile[i];
    out.v[i] = l * u_profile[i];
  }
  return out;
}

} // namespace nehari
