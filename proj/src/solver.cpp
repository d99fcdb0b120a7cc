#include "nehari/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "nehari/dimension.hpp"
#include "nehari/errors.hpp"
#include "nehari/instanton.hpp"
#include "nehari/limit_algebra.hpp"
#include "nehari/quadrature.hpp"

namespace nehari {

namespace {

double max_norm(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  for (double x : b) m = std::max(m, std::abs(x));
  return m;
}

// Block-tridiagonal LU for the coupled Newton system: 2x2 diagonal blocks,
// scalar-diagonal off blocks (the stiffness coupling is the same for both
// components). Solves in place.
class BlockTridiagonalSolver {
public:
  // diag blocks D_i = [[a,b],[c,d]], off coefficients: row i couples to
  // i+1 with up_i * I, row i+1 couples to i with lo_i * I.
  BlockTridiagonalSolver(std::vector<std::array<double, 4>> diag, std::vector<double> lo,
                         std::vector<double> up)
      : D_(std::move(diag)), lo_(std::move(lo)), up_(std::move(up)) {
    const std::size_t n = D_.size();
    inv_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) {
        // D_i -= lo_{i-1} * inv_{i-1} * up_{i-1}  (scalar * inverse block)
        const double f = lo_[i - 1] * up_[i - 1];
        D_[i][0] -= f * inv_[i - 1][0];
        D_[i][1] -= f * inv_[i - 1][1];
        D_[i][2] -= f * inv_[i - 1][2];
        D_[i][3] -= f * inv_[i - 1][3];
      }
      const double det = D_[i][0] * D_[i][3] - D_[i][1] * D_[i][2];
      inv_[i] = {D_[i][3] / det, -D_[i][1] / det, -D_[i][2] / det, D_[i][0] / det};
    }
  }

  void solve(std::span<double> ru, std::span<double> rv) const {
    const std::size_t n = D_.size();
    for (std::size_t i = 1; i < n; ++i) {
      // r_i -= lo_{i-1} * inv_{i-1} * r_{i-1}
      const double xu = inv_[i - 1][0] * ru[i - 1] + inv_[i - 1][1] * rv[i - 1];
      const double xv = inv_[i - 1][2] * ru[i - 1] + inv_[i - 1][3] * rv[i - 1];
      ru[i] -= lo_[i - 1] * xu;
      rv[i] -= lo_[i - 1] * xv;
    }
    // back substitution
    double xu = inv_[n - 1][0] * ru[n - 1] + inv_[n - 1][1] * rv[n - 1];
    double xv = inv_[n - 1][2] * ru[n - 1] + inv_[n - 1][3] * rv[n - 1];
    ru[n - 1] = xu;
    rv[n - 1] = xv;
    for (std::size_t i = n - 1; i-- > 0;) {
      const double bu = ru[i] - up_[i] * ru[i + 1];
      const double bv = rv[i] - up_[i] * rv[i + 1];
      xu = inv_[i][0] * bu + inv_[i][1] * bv;
      xv = inv_[i][2] * bu + inv_[i][3] * bv;
      ru[i] = xu;
      rv[i] = xv;
    }
  }

private:
  std::vector<std::array<double, 4>> D_;
  std::vector<double> lo_, up_;
  std::vector<std::array<double, 4>> inv_;
};

struct Workspace {
  const RadialBall& grid;
  double lambda, mu, ts, tsm1;
  TridiagonalSolver stiffness;

  explicit Workspace(const RadialBall& g, double lam, double m)
      : grid(g), lambda(lam), mu(m), ts(Dimension(g.N()).ts()),
        tsm1(Dimension(g.N()).two_star_minus(1).value()),
        stiffness(g.stiffness_diag(), g.stiffness_off()) {}

  // Sobolev-preconditioned descent direction: stiffness solve against the
  // weighted residual of each component.
  RadialPair direction(const RadialPair& g) const {
    const int M = grid.M();
    const auto w = grid.weights();
    RadialPair d;
    d.u.resize(M);
    d.v.resize(M);
    for (int i = 0; i < M; ++i) {
      d.u[i] = w[i] * g.u[i];
      d.v[i] = w[i] * g.v[i] * tsm1;
    }
    stiffness.solve(d.u);
    stiffness.solve(d.v);
    return d;
  }
};

double boundary_derivative(const RadialBall& grid, std::span<const double> u) {
  // one-sided second-order difference at r = R using u(R) = 0
  const int M = grid.M();
  return (u[M - 2] - 4.0 * u[M - 1]) / (2.0 * grid.h());
}

} // namespace

PohozaevReport pohozaev_report(const RadialBall& grid, const RadialPair& pair,
                               double lambda, double mu) {
  const Dimension dim(grid.N());
  const int N = grid.N();
  const int M = grid.M();
  const double ts = dim.ts();
  const double tsm1 = dim.two_star_minus(1).value();
  const double h = grid.h();
  const double om = surface_measure(N);
  const double R = grid.R();
  const auto r = grid.nodes();
  const auto w = grid.weights();

  PohozaevReport rep;
  const double dun = boundary_derivative(grid, pair.u);
  const double dvn = boundary_derivative(grid, pair.v);
  rep.boundary_u = om * std::pow(R, N - 1) * R * dun * dun;
  rep.boundary_v = om * std::pow(R, N - 1) * R * dvn * dvn;

  // x . grad v = r v'(r), centered differences with the symmetric origin value
  const double v0 = grid.origin_value(pair.v);
  double mixed = 0.0, mixed_radial = 0.0;
  for (int i = 0; i < M; ++i) {
    const double vm = (i == 0) ? v0 : pair.v[i - 1];
    const double vp = (i == M - 1) ? 0.0 : pair.v[i + 1];
    const double dv = (vp - vm) / (2.0 * h);
    const double upow = std::pow(std::abs(pair.u[i]), ts - 1.0);
    mixed += w[i] * upow * pair.v[i];
    mixed_radial += w[i] * upow * r[i] * dv;
  }

  const double au = grid.dirichlet(pair.u);
  const double av = grid.dirichlet(pair.v);
  const double bu = grid.l2(pair.u);
  const double cv = grid.lp(pair.v, ts);

  rep.identity_u = 0.5 * rep.boundary_u + 0.5 * (N - 2) * au - 0.5 * N * lambda * bu -
                   N / tsm1 * mixed - mixed_radial / tsm1;
  rep.identity_v =
      0.5 * rep.boundary_v + 0.5 * (N - 2) * av - N * mu / ts * cv + mixed_radial;
  rep.combined = -lambda * bu + 0.5 * rep.boundary_u + rep.boundary_v / (2.0 * tsm1);
  return rep;
}

double eigenfunction_obstruction(const RadialBall& grid, const RadialPair& pair,
                                 double lambda) {
  const Dimension dim(grid.N());
  const double ts = dim.ts();
  const EigenPair ep = lambda1(grid);
  const auto w = grid.weights();
  double pairing = 0.0, coupling = 0.0;
  for (int i = 0; i < grid.M(); ++i) {
    pairing += w[i] * pair.u[i] * ep.eigenfunction[i];
    const double up = pair.u[i] > 0.0 ? pair.u[i] : 0.0;
    coupling += w[i] * std::pow(up, ts - 2.0) * pair.v[i] * ep.eigenfunction[i];
  }
  return (ep.value - lambda) * pairing - coupling;
}

double mountain_pass_upper_bound(const RadialBall& grid, double lambda, double mu,
                                 std::span<const double> eps_list,
                                 const MountainPassOptions& opts) {
  if (eps_list.empty())
    throw std::invalid_argument("mountain_pass_upper_bound: empty eps list");
  const Dimension dim(grid.N());
  const double ts = dim.ts();
  const auto roots = roots_fN(mu, grid.N());
  if (roots.empty())
    throw RegimeError("mountain_pass_upper_bound: no limit coupling for this mu");
  const CouplingRoot ground = roots.back();

  const double Rp = opts.plateau_fraction * grid.R();
  const double Rs = opts.support_fraction * grid.R();
  const auto r = grid.nodes();
  const int M = grid.M();

  double best = std::numeric_limits<double>::infinity();
  for (double eps : eps_list) {
    Instanton inst{eps, grid.N()};
    RadialPair pair;
    pair.u.resize(M);
    pair.v.resize(M);
    for (int i = 0; i < M; ++i) {
      const double base = cutoff_profile(inst, Rp, Rs, r[i]);
      pair.u[i] = ground.k * base;
      pair.v[i] = ground.l * base;
    }
    const FiberCoefficients fc = fiber_coefficients(grid, pair, lambda, mu);
    if (!(fc.nonlinear > 0.0) || !(fc.quadratic > 0.0))
      throw RegimeError("mountain_pass_upper_bound: cutoff pair left the admissible set");
    auto J_t = [&](double t) {
      return 0.5 * t * t * fc.quadratic - std::pow(t, ts) * fc.nonlinear;
    };
    // the fiber map rises from 0 and falls to -inf: bracket the peak and
    // run golden-section
    const double t_scale = std::pow(fc.quadratic / (ts * fc.nonlinear), 1.0 / (ts - 2.0));
    double a = 0.0, b = 4.0 * t_scale;
    const double gold = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gold * (b - a), d = a + gold * (b - a);
    double fc_v = J_t(c), fd_v = J_t(d);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * t_scale; ++it) {
      if (fc_v > fd_v) {
        b = d; d = c; fd_v = fc_v;
        c = b - gold * (b - a); fc_v = J_t(c);
      } else {
        a = c; c = d; fc_v = fd_v;
        d = a + gold * (b - a); fd_v = J_t(d);
      }
    }
    best = std::min(best, J_t(0.5 * (a + b)));
  }
  return best;
}

SolveReport ground_state_solve(const RadialBall& grid, double lambda, double mu,
                               const SolveOptions& opts) {
  const EigenPair ep = lambda1(grid);
  if (!(lambda > 0.0) || !(lambda < ep.value))
    throw RegimeError("ground_state_solve: lambda must lie in (0, lambda_1)");
  if (!(mu >= 0.0)) throw std::invalid_argument("ground_state_solve: mu >= 0 required");

  Workspace ws(grid, lambda, mu);
  const int M = grid.M();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);

  RadialPair cur = nehari_seed(grid, ep.eigenfunction, lambda, mu);
  cur = nehari_project(grid, cur, lambda, mu).pair;
  double J = evaluate(grid, cur, lambda, mu).J_plus;

  auto perturb = [&](RadialPair& p) {
    for (int i = 0; i < M; ++i) {
      p.u[i] *= 1.0 + 1e-6 * noise(rng);
      p.v[i] *= 1.0 + 1e-6 * noise(rng);
    }
  };

  int iters = 0;
  const double newton_gate = std::max(1e-5, opts.tol * 10.0);
  for (; iters < opts.max_iterations; ++iters) {
    const RadialPair g = gradient_Jplus(grid, cur, lambda, mu);
    const double res = max_norm(g.u, g.v);
    if (res < (opts.newton_polish ? newton_gate : opts.tol)) break;

    const RadialPair d = ws.direction(g);
    double slope = 0.0;
    for (int i = 0; i < M; ++i)
      slope += grid.weights()[i] * (g.u[i] * d.u[i] + g.v[i] * d.v[i]);

    double alpha = 1.0;
    bool accepted = false;
    RadialPair trial;
    trial.u.resize(M);
    trial.v.resize(M);
    for (int bt = 0; bt < 60; ++bt) {
      for (int i = 0; i < M; ++i) {
        trial.u[i] = cur.u[i] - alpha * d.u[i];
        trial.v[i] = cur.v[i] - alpha * d.v[i];
      }
      try {
        Projection pr = nehari_project(grid, trial, lambda, mu);
        const double Jt = evaluate(grid, pr.pair, lambda, mu).J_plus;
        if (Jt <= J - opts.armijo_c * alpha * slope) {
          cur = std::move(pr.pair);
          J = Jt;
          accepted = true;
          break;
        }
      } catch (const RegimeError&) {
        // trial left the admissible set; shrink
      }
      alpha *= opts.armijo_shrink;
    }
    if (!accepted) {
      // line search exhausted: either at the floor of what the flat metric
      // can do (hand off to Newton) or grazing the admissible boundary
      if (opts.newton_polish) break;
      perturb(cur);
      try {
        cur = nehari_project(grid, cur, lambda, mu).pair;
      } catch (const RegimeError&) {
        throw RegimeError("ground_state_solve: iterate left the admissible set");
      }
      J = evaluate(grid, cur, lambda, mu).J_plus;
      continue;
    }

    if ((iters + 1) % opts.clamp_every == 0) {
      for (int i = 0; i < M; ++i) {
        if (cur.u[i] < 0.0) cur.u[i] = 0.0;
        if (cur.v[i] < 0.0) cur.v[i] = 0.0;
      }
      try {
        cur = nehari_project(grid, cur, lambda, mu).pair;
      } catch (const RegimeError&) {
        perturb(cur);
        cur = nehari_project(grid, cur, lambda, mu).pair;
      }
      const double Jc = evaluate(grid, cur, lambda, mu).J_plus;
      // relative energy stagnation together with a met residual target
      // terminates the gradient phase
      if (std::abs(Jc - J) <= opts.tol * opts.tol * std::max(1.0, std::abs(Jc))) {
        const RadialPair gg = gradient_Jplus(grid, cur, lambda, mu);
        if (max_norm(gg.u, gg.v) < opts.tol) { J = Jc; break; }
      }
      J = Jc;
    }

    const double nsq = grid.l2(cur.u) + grid.l2(cur.v);
    if (!(nsq > 1e-20))
      throw RegimeError("ground_state_solve: iterates collapsed to zero");
  }

  // Newton polish on the full optimality system
  if (opts.newton_polish) {
    const auto w = grid.weights();
    const auto kd = grid.stiffness_diag();
    const auto ko = grid.stiffness_off();
    RadialPair g = gradient_Jplus(grid, cur, lambda, mu);
    double res = max_norm(g.u, g.v);
    for (int nit = 0; nit < opts.newton_max && res > 1e-12; ++nit) {
      std::vector<std::array<double, 4>> diag(M);
      std::vector<double> lo(M - 1), up(M - 1);
      for (int i = 0; i < M; ++i) {
        const double u = cur.u[i], v = cur.v[i];
        const double upw = u > 0.0 ? std::pow(u, ws.ts - 2.0) : 0.0;
        const double dupw = u > 0.0 ? (ws.ts - 2.0) * std::pow(u, ws.ts - 3.0) : 0.0;
        const double vpw = v > 0.0 ? (ws.ts - 1.0) * std::pow(v, ws.ts - 2.0) : 0.0;
        diag[i] = {kd[i] / w[i] - lambda - dupw * v, -upw,
                   -(ws.ts - 1.0) * upw, kd[i] / w[i] - mu * vpw};
      }
      for (int i = 0; i + 1 < M; ++i) {
        up[i] = ko[i] / w[i];
        lo[i] = ko[i] / w[i + 1];
      }
      std::vector<double> ru(M), rv(M);
      for (int i = 0; i < M; ++i) {
        ru[i] = g.u[i];
        rv[i] = g.v[i] * ws.tsm1; // unscaled second equation
      }
      BlockTridiagonalSolver newton(std::move(diag), std::move(lo), std::move(up));
      newton.solve(ru, rv);

      double step = 1.0;
      RadialPair trial;
      trial.u.resize(M);
      trial.v.resize(M);
      double res_trial = res;
      for (int bt = 0; bt < 30; ++bt) {
        for (int i = 0; i < M; ++i) {
          trial.u[i] = cur.u[i] - step * ru[i];
          trial.v[i] = cur.v[i] - step * rv[i];
        }
        const RadialPair gt = gradient_Jplus(grid, trial, lambda, mu);
        res_trial = max_norm(gt.u, gt.v);
        if (res_trial < res) { g = gt; break; }
        step *= 0.5;
      }
      if (!(res_trial < res)) break; // residual floor reached
      cur = trial;
      res = res_trial;
      ++iters;
    }
  }

  SolveReport rep;
  rep.lambda_1 = ep.value;
  rep.iterations = iters;
  const FunctionalReport fr = evaluate(grid, cur, lambda, mu);
  const RadialPair g = gradient_Jplus(grid, cur, lambda, mu);
  rep.el_residual = max_norm(g.u, g.v);
  if (rep.el_residual > opts.tol)
    throw ConvergenceError("ground_state_solve: residual tolerance not reached");
  rep.B_num = fr.J;
  rep.H_residual = std::abs(fr.H);
  rep.positive = true;
  for (int i = 0; i < M; ++i)
    if (!(cur.u[i] > 0.0) || !(cur.v[i] > 0.0)) { rep.positive = false; break; }
  rep.pohozaev = pohozaev_report(grid, cur, lambda, mu);
  rep.pair = std::move(cur);
  return rep;
}

} // namespace nehari
