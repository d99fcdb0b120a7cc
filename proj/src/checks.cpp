#include "nehari/checks.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "nehari/commands.hpp"
#include "nehari/csv.hpp"
#include "nehari/dimension.hpp"
#include "nehari/functionals.hpp"
#include "nehari/instanton.hpp"
#include "nehari/limit_algebra.hpp"
#include "nehari/quadrature.hpp"
#include "nehari/radial_grid.hpp"
#include "nehari/solver.hpp"

namespace nehari {

namespace {

void push_max(std::vector<CheckResult>& out, const std::string& name, double measured,
              double bound) {
  out.push_back({name, measured, bound, measured < bound});
}

void push_min(std::vector<CheckResult>& out, const std::string& name, double measured,
              double bound) {
  out.push_back({name, measured, bound, measured > bound});
}

std::vector<double> mu_samples(int N) {
  const double muN = mu_existence_threshold(N);
  switch (N) {
    case 4: return {1e-3, 0.1, 0.2, std::sqrt(6.0) / 9.0, 0.3, muN};
    case 5: return {1e-3, 0.1, 0.3, 0.5, muN};
    case 6: return {0.0, 0.25, 0.5, 0.9};
    default: return {0.0, 0.5, 2.0, 10.0};
  }
}

RadialPair random_admissible_pair(const RadialBall& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> du(-1.0, 1.0);
  std::uniform_real_distribution<double> dv(0.05, 1.05);
  RadialPair p;
  p.u.resize(grid.M());
  p.v.resize(grid.M());
  for (int i = 0; i < grid.M(); ++i) {
    p.u[i] = du(rng);
    p.v[i] = dv(rng); // strictly positive second component keeps the pair admissible
  }
  return p;
}

RadialPair random_signed_pair(const RadialBall& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  RadialPair p;
  p.u.resize(grid.M());
  p.v.resize(grid.M());
  for (int i = 0; i < grid.M(); ++i) {
    p.u[i] = d(rng);
    p.v[i] = d(rng);
  }
  return p;
}

} // namespace

std::vector<CheckResult> limit_algebra_checks(const CheckOptions& opts) {
  (void)opts;
  std::vector<CheckResult> out;

  // coupling system residuals across dimensions and regimes
  double eq1 = 0.0, eq2 = 0.0;
  for (int N : {4, 5, 6, 7, 9}) {
    const Dimension dim(N);
    for (double mu : mu_samples(N)) {
      for (const CouplingRoot& c : roots_fN(mu, N)) {
        eq1 = std::max(eq1, std::abs(pow_rat(c.k, dim.two_star_minus(3)) * c.l - 1.0));
        eq2 = std::max(eq2, std::abs(mu * pow_rat(c.l, dim.two_star_minus(1)) +
                                     pow_rat(c.k, dim.two_star_minus(1)) - c.l));
      }
    }
  }
  push_max(out, "limit_algebra/coupling-system-eq1", eq1, 1e-12);
  push_max(out, "limit_algebra/coupling-system-eq2", eq2, 1e-10);

  // interior critical points of psi_4, located by sign changes of the
  // centered finite-difference derivative, must solve f_4 = 0
  {
    double worst_f = 0.0;
    for (double mu : {0.05, 0.1, 0.2}) {
      auto dpsi = [&](double m) {
        const double s = 1e-6;
        return (psi_N(m + s, mu, 4) - psi_N(m - s, mu, 4)) / (2.0 * s);
      };
      const int n = 2000;
      double prev_m = 1e-3, prev_d = dpsi(prev_m);
      for (int i = 1; i <= n; ++i) {
        const double m = 1e-3 * std::pow(10.0 / 1e-3, static_cast<double>(i) / n);
        const double d = dpsi(m);
        if ((prev_d < 0.0) != (d < 0.0)) {
          double a = prev_m, b = m;
          for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
            const double mid = 0.5 * (a + b);
            if ((dpsi(mid) < 0.0) == (prev_d < 0.0)) a = mid;
            else b = mid;
          }
          const double crit = 0.5 * (a + b);
          if (std::abs(dpsi(crit)) < 1e-4)
            worst_f = std::max(worst_f, std::abs(f_N(crit, mu, 4)));
        }
        prev_m = m;
        prev_d = d;
      }
    }
    push_max(out, "limit_algebra/psi-critical-points-solve-f4", worst_f, 1e-6);
  }

  // root-count structure over the coupling regimes
  {
    int mismatches = 0;
    for (int N : {4, 5}) {
      const double muN = mu_existence_threshold(N);
      if (roots_fN(0.0, N).size() != 1) ++mismatches;
      if (roots_fN(0.5 * muN, N).size() != 2) ++mismatches;
      if (roots_fN(muN, N).size() != 1) ++mismatches;
      if (roots_fN(muN, N).front().branch != Branch::double_root) ++mismatches;
      if (!roots_fN(1.1 * muN, N).empty()) ++mismatches;
    }
    push_max(out, "limit_algebra/root-count-structure", mismatches, 0.5);
  }

  // level ordering: nontrivial below semitrivial before mu_star, above it
  // after, equal at the switch
  {
    int mismatches = 0;
    double eq_gap = 0.0;
    for (int N : {4, 5}) {
      const double mus = *mu_star(N);
      const double muN = mu_existence_threshold(N);
      const double tsm1 = Dimension(N).two_star_minus(1).value();
      auto nontrivial = [&](double mu) {
        const CouplingRoot c = roots_fN(mu, N).back();
        return (c.k * c.k + c.l * c.l / tsm1) / N;
      };
      auto semitrivial = [&](double mu) {
        return psi_N_boundary(mu, N) / N;
      };
      for (double f : {0.3, 0.8})
        if (!(nontrivial(f * mus) < semitrivial(f * mus))) ++mismatches;
      const double mu_after = mus + 0.8 * (muN - mus);
      if (!(nontrivial(mu_after) > semitrivial(mu_after))) ++mismatches;
      eq_gap = std::max(eq_gap, std::abs(nontrivial(mus) - semitrivial(mus)) /
                                    semitrivial(mus));
    }
    push_max(out, "limit_algebra/level-ordering-switch", mismatches, 0.5);
    push_max(out, "limit_algebra/level-equality-at-mu-star", eq_gap, 1e-8);
  }

  // psi equals the squared-amplitude sum along the constraint curve
  {
    double worst = 0.0;
    for (int N : {4, 5, 6, 7}) {
      const Dimension dim(N);
      const double tsm1 = dim.two_star_minus(1).value();
      for (double mu : mu_samples(N)) {
        if (mu == 0.0) continue; // curve parametrization needs mu or m bounded away
        for (int i = 0; i <= 50; ++i) {
          const double m = 1e-2 * std::pow(1e4, i / 50.0);
          const double lbar =
              pow_rat((tsm1 * m * m + 1.0) /
                          (dim.ts() * pow_rat(m, dim.two_star_minus(1)) + mu),
                      dim.inv_gap());
          const double kbar = m * lbar;
          const double lhs = kbar * kbar + lbar * lbar / tsm1;
          const double psi = psi_N(m, mu, N);
          worst = std::max(worst, std::abs(lhs - psi) / psi);
        }
      }
    }
    push_max(out, "limit_algebra/curve-parametrization-matches-psi", worst, 1e-12);
  }

  // closed-form coupling in dimension six
  {
    double worst = 0.0;
    for (double mu : {0.0, 0.1, 0.25, 0.5, 0.75, 0.99}) {
      const auto sol = coupling_solutions(mu, 6);
      worst = std::max(worst, std::abs(sol[0].first - std::sqrt(1.0 - mu)));
      worst = std::max(worst, std::abs(sol[0].second - 1.0));
    }
    push_max(out, "limit_algebra/N6-closed-form-coupling", worst, 1e-12);
  }

  return out;
}

std::vector<CheckResult> instanton_checks(const CheckOptions& opts) {
  std::vector<CheckResult> out;
  const double canary = 1.0 + opts.sobolev_perturbation;

  // scale invariance of both norms
  {
    double worst = 0.0;
    for (int N : {4, 5, 6, 7}) {
      const double d1 = dirichlet_norm(Instanton{1.0, N});
      const double c1 = critical_norm(Instanton{1.0, N});
      for (double eps : {0.1, 10.0}) {
        worst = std::max(worst, std::abs(dirichlet_norm(Instanton{eps, N}) - d1) / d1);
        worst = std::max(worst, std::abs(critical_norm(Instanton{eps, N}) - c1) / c1);
      }
    }
    push_max(out, "instanton/scale-invariance", worst, 1e-10);
  }

  // pointwise equation residual with the analytic derivatives
  {
    double worst = 0.0;
    for (int N : {4, 5, 6, 7}) {
      const Instanton inst{1.0, N};
      const double ts = Dimension(N).ts();
      for (int i = 0; i <= 200; ++i) {
        const double r = (i == 0) ? 0.0 : 1e-3 * std::pow(1e6, (i - 1) / 199.0);
        const double lap = instanton_radial_laplacian(inst, r);
        const double rhs = std::pow(instanton_value(inst, r), ts - 1.0);
        worst = std::max(worst, std::abs(lap + rhs) * std::pow(1.0 + r * r, 0.5 * (N + 2)));
      }
    }
    push_max(out, "instanton/pde-residual-normalized", worst, 1e-6);
  }

  // limit energies of coupling solutions reproduce the ground levels
  {
    double worst = 0.0;
    for (int N : {4, 5, 6, 7}) {
      const double S = sobolev_constant(N) * canary;
      const Instanton inst{1.0, N};
      for (double mu : mu_samples(N)) {
        if (mu > mu_existence_threshold(N)) continue;
        const double tsm1 = Dimension(N).two_star_minus(1).value();
        for (const CouplingRoot& c : roots_fN(mu, N)) {
          const double level = (c.k * c.k + c.l * c.l / tsm1) / N * std::pow(S, 0.5 * N);
          const double je = limit_energy(c.k, c.l, mu, inst);
          worst = std::max(worst, std::abs(je - level) / level);
        }
      }
    }
    push_max(out, "instanton/limit-energy-matches-level", worst, 1e-7);
  }

  // ground_level agreement for the semitrivial branch as well
  {
    double worst = 0.0;
    for (int N : {4, 5}) {
      const double S = sobolev_constant(N) * canary;
      const Instanton inst{1.0, N};
      const double mus = *mu_star(N);
      const double mu = mus + 0.5 * (mu_existence_threshold(N) - mus);
      const LevelReport rep = ground_level(mu, N, S);
      const double l = pow_rat(mu, Rational{-(N - 2LL), 4LL});
      const double je = limit_energy(0.0, l, mu, inst);
      worst = std::max(worst, std::abs(je - rep.A) / rep.A);
    }
    push_max(out, "instanton/semitrivial-energy-matches-level", worst, 1e-7);
  }

  // quadrature stability under node doubling and across rules
  {
    double worst = 0.0;
    const Instanton inst{1.0, 4};
    QuadratureScheme q;
    for (int nodes : {1024, 2048}) {
      q.node_count = nodes;
      QuadratureScheme q2 = q;
      q2.node_count = 2 * nodes;
      const double a = dirichlet_norm(inst, q), b = dirichlet_norm(inst, q2);
      worst = std::max(worst, std::abs(a - b) / std::abs(b));
      const double c = critical_norm(inst, q), d = critical_norm(inst, q2);
      worst = std::max(worst, std::abs(c - d) / std::abs(d));
    }
    push_max(out, "instanton/quadrature-self-consistency", worst, 1e-9);

    QuadratureScheme ts_rule;
    ts_rule.rule = QuadratureScheme::Rule::tanh_sinh;
    ts_rule.node_count = 4096;
    const double gauss = critical_norm(inst);
    const double de = critical_norm(inst, ts_rule);
    push_max(out, "instanton/gauss-vs-tanh-sinh", std::abs(gauss - de) / gauss, 1e-9);
  }

  return out;
}

std::vector<CheckResult> solver_checks(const CheckOptions& opts) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(opts.seed);

  const RadialBall grid(1.0, 256, 4);
  const EigenPair ep = lambda1(grid);
  const double ts = Dimension(4).ts();
  const double tsm1 = Dimension(4).two_star_minus(1).value();

  // projection properties on random admissible pairs
  {
    double worst_h = 0.0, worst_idem = 0.0, worst_fd = 0.0;
    const double lambda = 0.5 * ep.value, mu = 0.1;
    for (int trial = 0; trial < 100; ++trial) {
      const RadialPair p = random_admissible_pair(grid, rng);
      const Projection pr = nehari_project(grid, p, lambda, mu);
      const FunctionalReport rep = evaluate(grid, pr.pair, lambda, mu);
      const double quad = rep.dirichlet_u - lambda * rep.l2_u + rep.dirichlet_v / tsm1;
      worst_h = std::max(worst_h, std::abs(rep.H) / quad);
      const Projection pr2 = nehari_project(grid, pr.pair, lambda, mu);
      worst_idem = std::max(worst_idem, std::abs(pr2.t_bar - 1.0));
      if (trial < 20) {
        // centered difference of the fiber energy at t_bar, via full
        // evaluations of scaled pairs
        const double t = pr.t_bar, dt = 1e-6 * t;
        RadialPair up = p, dn = p;
        for (int i = 0; i < grid.M(); ++i) {
          up.u[i] *= (t + dt); up.v[i] *= (t + dt);
          dn.u[i] *= (t - dt); dn.v[i] *= (t - dt);
        }
        const double der = (evaluate(grid, up, lambda, mu).J -
                            evaluate(grid, dn, lambda, mu).J) / (2.0 * dt);
        worst_fd = std::max(worst_fd, std::abs(der) * t / quad);
      }
    }
    push_max(out, "solver/projection-zeroes-H", worst_h, 1e-10);
    push_max(out, "solver/projection-idempotence", worst_idem, 1e-10);
    push_max(out, "solver/fiber-derivative-vanishes-at-tbar", worst_fd, 1e-6);
  }

  // homogeneity: the energy along the fiber is exactly two-term
  {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const RadialPair p = random_admissible_pair(grid, rng);
      const double lambda = 0.3 * ep.value, mu = 0.1;
      const FiberCoefficients fc = fiber_coefficients(grid, p, lambda, mu);
      const double scale = std::abs(fc.quadratic) + std::abs(fc.nonlinear);
      for (double t : {0.5, 1.0, 2.0}) {
        RadialPair q = p;
        for (int i = 0; i < grid.M(); ++i) { q.u[i] *= t; q.v[i] *= t; }
        const double direct = evaluate(grid, q, lambda, mu).J;
        const double form = 0.5 * t * t * fc.quadratic - std::pow(t, ts) * fc.nonlinear;
        worst = std::max(worst, std::abs(direct - form) / scale);
      }
    }
    push_max(out, "solver/fiber-homogeneity", worst, 1e-12);
  }

  // H is the scaled sum of the two constraint components, and the
  // energy identity H = 2J - (2/N) * nonlinear-mass holds
  {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const RadialPair p = random_signed_pair(grid, rng);
      const double lambda = 0.4 * ep.value, mu = 0.2;
      const FunctionalReport rep = evaluate(grid, p, lambda, mu);
      const double scale = rep.dirichlet_u + rep.dirichlet_v;
      const double hsum = rep.G[0] + rep.G[1] / tsm1;
      worst = std::max(worst, std::abs(rep.H - hsum) / scale);
      const double mass = (mu * rep.critical_v + ts * rep.mixed) / tsm1;
      worst = std::max(worst, std::abs(rep.H - (2.0 * rep.J - 2.0 / grid.N() * mass)) / scale);
    }
    push_max(out, "solver/constraint-identities", worst, 1e-12);
  }

  // seed lies on the constraint set
  {
    double worst = 0.0;
    for (double frac : {0.3, 0.5, 0.8}) {
      const RadialPair seed = nehari_seed(grid, ep.eigenfunction, frac * ep.value, 0.1);
      const FunctionalReport rep = evaluate(grid, seed, frac * ep.value, 0.1);
      const double scale = rep.dirichlet_u + rep.dirichlet_v / tsm1;
      worst = std::max(worst,
                       std::max(std::abs(rep.G[0]), std::abs(rep.G[1])) / scale);
    }
    push_max(out, "solver/seed-on-constraint-set", worst, 1e-9);
  }

  // analytic gradient against centered differences of the energy
  {
    double worst = 0.0;
    for (const double mu : {0.0, 0.1}) {
      const double lambda = (mu == 0.0 ? 0.3 : 0.7) * ep.value;
      for (int trial = 0; trial < 20; ++trial) {
        const RadialPair p = random_signed_pair(grid, rng);
        const RadialPair g = gradient_Jplus(grid, p, lambda, mu);
        RadialPair dir = random_signed_pair(grid, rng);
        double analytic = 0.0;
        for (int i = 0; i < grid.M(); ++i)
          analytic += grid.weights()[i] * (g.u[i] * dir.u[i] + g.v[i] * dir.v[i]);
        const double t = 1e-6;
        RadialPair up = p, dn = p;
        for (int i = 0; i < grid.M(); ++i) {
          up.u[i] += t * dir.u[i]; up.v[i] += t * dir.v[i];
          dn.u[i] -= t * dir.u[i]; dn.v[i] -= t * dir.v[i];
        }
        const double fd = (evaluate(grid, up, lambda, mu).J_plus -
                           evaluate(grid, dn, lambda, mu).J_plus) / (2.0 * t);
        worst = std::max(worst, std::abs(fd - analytic) / std::max(1.0, std::abs(analytic)));
      }
    }
    push_max(out, "solver/gradient-matches-finite-differences", worst, 1e-6);
  }

  // grid-refinement Cauchy structure of the converged level, plus
  // positivity and a strictly positive minimum
  {
    double B[3] = {0, 0, 0};
    bool positive = true;
    double min_val = std::numeric_limits<double>::infinity();
    const int Ms[3] = {128, 256, 512};
    for (int j = 0; j < 3; ++j) {
      const RadialBall g(1.0, Ms[j], 4);
      const EigenPair e = lambda1(g);
      SolveOptions so;
      so.seed = opts.seed;
      const SolveReport rep = ground_state_solve(g, 0.5 * e.value, 0.1, so);
      B[j] = rep.B_num;
      positive = positive && rep.positive;
      for (double x : rep.pair.u) min_val = std::min(min_val, x);
      for (double x : rep.pair.v) min_val = std::min(min_val, x);
    }
    const double gap1 = B[0] - B[1], gap2 = B[1] - B[2];
    const double ratio = gap1 / gap2;
    push_min(out, "solver/grid-convergence-cauchy-ratio",
             (gap1 * gap2 > 0.0) ? ratio : -1.0, 3.0);
    push_min(out, "solver/converged-profiles-positive", positive ? min_val : -1.0, 0.0);
    const double S = sobolev_constant(4);
    push_min(out, "solver/level-strictly-positive", B[2], 1e-6 * S * S);
  }

  return out;
}

std::vector<CheckResult> cli_checks(const CheckOptions& opts) {
  std::vector<CheckResult> out;

  // byte stability of a representative sweep
  {
    RunConfig cfg;
    cfg.N = 4;
    cfg.mu_sweep = SweepSpec{0.0, 0.4, 21};
    cfg.seed = opts.seed;
    const std::string a = levels_csv(cfg);
    const std::string b = levels_csv(cfg);
    push_max(out, "cli/levels-csv-byte-stable", a == b ? 0.0 : 1.0, 0.5);
  }

  // 17-significant-digit round trip
  {
    int mismatches = 0;
    for (double x : {3.141592653589793, 1.0 / 3.0, 0.1, 1e-300, 1e300,
                     std::sqrt(6.0) / 9.0, 2.0 * std::sqrt(3.0) / 9.0}) {
      const std::string s = format_double(x);
      if (std::stod(s) != x) ++mismatches;
    }
    push_max(out, "cli/numeric-format-round-trip", mismatches, 0.5);
  }

  return out;
}

std::vector<CheckResult> all_checks(const CheckOptions& opts) {
  std::vector<CheckResult> out;
  for (auto* suite : {limit_algebra_checks, instanton_checks, solver_checks, cli_checks}) {
    const auto part = suite(opts);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

} // namespace nehari
