#include "nehari/commands.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>
#include <vector>

#include "nehari/csv.hpp"
#include "nehari/dimension.hpp"
#include "nehari/errors.hpp"
#include "nehari/instanton.hpp"
#include "nehari/limit_algebra.hpp"
#include "nehari/solver.hpp"

namespace nehari {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Evaluate fn(i) for i in [0, n) across a small thread pool; results land
// in index order regardless of completion order.
template <typename Fn>
std::vector<std::string> ordered_parallel_rows(int n, Fn fn) {
  std::vector<std::string> rows(n);
  if (n < 16) {
    for (int i = 0; i < n; ++i) rows[i] = fn(i);
    return rows;
  }
  const int workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  std::vector<std::future<void>> futs;
  futs.reserve(workers);
  for (int wkr = 0; wkr < workers; ++wkr) {
    futs.push_back(std::async(std::launch::async, [&, wkr] {
      for (int i = wkr; i < n; i += workers) rows[i] = fn(i);
    }));
  }
  for (auto& f : futs) f.get();
  return rows;
}

std::vector<double> sweep_values(const RunConfig& cfg) {
  std::vector<double> mus;
  if (cfg.mu_sweep) {
    const SweepSpec& s = *cfg.mu_sweep;
    for (int i = 0; i < s.count; ++i)
      mus.push_back(s.start + (s.stop - s.start) * i / (s.count - 1));
  } else if (cfg.mu) {
    mus.push_back(*cfg.mu);
  } else {
    throw std::invalid_argument("either a mu value or a mu sweep is required");
  }
  return mus;
}

void require_mu_admissible(double mu, int N) {
  const ThresholdSet t = thresholds(N);
  if (mu < 0.0 || mu > t.interval_upper + 1e-15)
    throw RegimeError("mu = " + format_double(mu) +
                      " lies outside the admissible coupling interval [0, " +
                      format_double(t.interval_upper) + "] for N = " + std::to_string(N));
}

double require_lambda(const RunConfig& cfg, const RadialBall& grid, double lambda_1) {
  if (!(cfg.lambda_frac > 0.0) || !(cfg.lambda_frac < 1.0))
    throw RegimeError("lambda-frac = " + format_double(cfg.lambda_frac) +
                      ": lambda = frac * lambda_1 must lie strictly inside (0, lambda_1); "
                      "no solution exists for lambda >= lambda_1 or lambda <= 0");
  (void)grid;
  return cfg.lambda_frac * lambda_1;
}

} // namespace

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec s;
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("sweep must be start:stop:count");
  std::size_t pos = 0;
  s.start = std::stod(text.substr(0, c1), &pos);
  s.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1), &pos);
  s.count = std::stoi(text.substr(c2 + 1), &pos);
  if (s.count < 2 || !(s.start < s.stop))
    throw std::invalid_argument("sweep requires count >= 2 and start < stop");
  return s;
}

std::string levels_csv(const RunConfig& cfg) {
  std::vector<double> mus = sweep_values(cfg);
  // regime boundaries as exact rows
  const ThresholdSet t = thresholds(cfg.N);
  const double lo = mus.front(), hi = mus.back();
  auto add_boundary = [&](double b) {
    if (!std::isfinite(b) || b < lo || b > hi) return;
    for (double m : mus)
      if (std::abs(m - b) < 1e-15) return;
    mus.push_back(b);
  };
  if (t.mu_star) add_boundary(*t.mu_star);
  add_boundary(t.mu_N);
  std::sort(mus.begin(), mus.end());

  std::string out = "mu,regime,k,l,A_over_S_half_N,semitrivial_over_S_half_N\n";
  auto rows = ordered_parallel_rows(static_cast<int>(mus.size()), [&](int i) {
    const LevelReport rep = ground_level(mus[i], cfg.N, 1.0);
    double k = kNaN, l = kNaN;
    if (rep.minimizer_coupling) {
      k = rep.minimizer_coupling->k;
      l = rep.minimizer_coupling->l;
    } else if (rep.regime == Regime::SemitrivialGround) {
      k = 0.0;
      l = pow_rat(rep.mu, Rational{-(cfg.N - 2LL), 4LL});
    }
    const std::string cells[6] = {
        format_double(rep.mu),          to_string(rep.regime),
        format_double(k),               format_double(l),
        format_double(rep.A),
        format_double(rep.semitrivial_level ? *rep.semitrivial_level : kNaN)};
    return csv_row(cells);
  });
  for (const std::string& r : rows) out += r;
  return out;
}

std::string coupling_csv(const RunConfig& cfg) {
  const std::vector<double> mus = sweep_values(cfg);
  const Dimension dim(cfg.N);
  std::string out = "mu,branch,m,k,l,residual_eq1,residual_eq2\n";
  auto rows = ordered_parallel_rows(static_cast<int>(mus.size()), [&](int i) {
    std::string block;
    for (const CouplingRoot& c : roots_fN(mus[i], cfg.N)) {
      const double eq1 = pow_rat(c.k, dim.two_star_minus(3)) * c.l - 1.0;
      const double eq2 = mus[i] * pow_rat(c.l, dim.two_star_minus(1)) +
                         pow_rat(c.k, dim.two_star_minus(1)) - c.l;
      const std::string cells[7] = {format_double(mus[i]), to_string(c.branch),
                                    format_double(c.m),    format_double(c.k),
                                    format_double(c.l),    format_double(eq1),
                                    format_double(eq2)};
      block += csv_row(cells);
    }
    return block;
  });
  for (const std::string& r : rows) out += r;
  return out;
}

std::string thresholds_csv(const RunConfig& cfg) {
  const ThresholdSet t = thresholds(cfg.N);
  std::string out = "N,mu_N,mu_star,interval_upper\n";
  const std::string cells[4] = {std::to_string(cfg.N), format_double(t.mu_N),
                                format_double(t.mu_star ? *t.mu_star : kNaN),
                                format_double(t.interval_upper)};
  out += csv_row(cells);
  return out;
}

SolveOutput run_solve(const RunConfig& cfg) {
  if (!cfg.mu) throw std::invalid_argument("solve requires a mu value");
  require_mu_admissible(*cfg.mu, cfg.N);
  const RadialBall grid(cfg.R, cfg.M, cfg.N);
  const EigenPair ep = lambda1(grid);
  const double lambda = require_lambda(cfg, grid, ep.value);

  SolveOptions opts;
  opts.seed = cfg.seed;
  const SolveReport rep = ground_state_solve(grid, lambda, *cfg.mu, opts);
  const double S = sobolev_constant(cfg.N);
  const LevelReport lvl = ground_level(*cfg.mu, cfg.N, S);

  SolveOutput out;
  out.summary_csv =
      "N,R,M,lambda,mu,B_num,A,el_residual,H_residual,positive,pohozaev_combined\n";
  const std::string cells[11] = {std::to_string(cfg.N),
                                 format_double(cfg.R),
                                 std::to_string(cfg.M),
                                 format_double(lambda),
                                 format_double(*cfg.mu),
                                 format_double(rep.B_num),
                                 format_double(lvl.A),
                                 format_double(rep.el_residual),
                                 format_double(rep.H_residual),
                                 rep.positive ? "true" : "false",
                                 format_double(rep.pohozaev.combined)};
  out.summary_csv += csv_row(cells);
  out.profile = profile_csv(grid.R(), grid.nodes(), grid.origin_value(rep.pair.u),
                            grid.origin_value(rep.pair.v), rep.pair.u, rep.pair.v);
  return out;
}

std::string limit_check_csv(const RunConfig& cfg, bool* all_pass) {
  const int N = cfg.N;
  const double S = sobolev_constant(N);
  const double SN2 = std::pow(S, 0.5 * N);
  bool ok = true;
  std::string out = "check,measured,expected,rel_err,pass\n";
  auto emit = [&](const std::string& name, double measured, double expected, double rel,
                  double tol) {
    const bool pass = rel < tol;
    ok = ok && pass;
    const std::string cells[5] = {name, format_double(measured), format_double(expected),
                                  format_double(rel), pass ? "true" : "false"};
    out += csv_row(cells);
  };
  auto row = [&](const std::string& name, double measured, double expected, double tol) {
    emit(name, measured, expected, std::abs(measured - expected) / std::abs(expected), tol);
  };

  for (double eps : {0.1, 1.0, 10.0}) {
    Instanton inst{eps, N};
    row("dirichlet_norm_eps_" + format_double(eps), dirichlet_norm(inst), SN2, 1e-8);
    row("critical_norm_eps_" + format_double(eps), critical_norm(inst), SN2, 1e-8);
  }

  const double mu = cfg.mu ? *cfg.mu : 0.1;
  Instanton inst{1.0, N};
  const auto roots = roots_fN(mu, N);
  const double tsm1 = Dimension(N).two_star_minus(1).value();
  for (const CouplingRoot& c : roots) {
    const double expected = (c.k * c.k + c.l * c.l / tsm1) / N * SN2;
    row("limit_energy_branch_" + to_string(c.branch),
        limit_energy(c.k, c.l, mu, inst), expected, 1e-7);
    const auto g0 = nehari0_residual(c.k, c.l, mu, inst);
    const double resid = std::max(std::abs(g0[0]), std::abs(g0[1]));
    emit("nehari0_residual_" + to_string(c.branch), resid, 0.0, resid / SN2, 1e-7);
  }
  if (all_pass) *all_pass = ok;
  return out;
}

std::string pohozaev_csv(const RunConfig& cfg) {
  if (!cfg.mu) throw std::invalid_argument("pohozaev requires a mu value");
  require_mu_admissible(*cfg.mu, cfg.N);
  const RadialBall grid(cfg.R, cfg.M, cfg.N);
  const EigenPair ep = lambda1(grid);
  const double lambda = require_lambda(cfg, grid, ep.value);
  SolveOptions opts;
  opts.seed = cfg.seed;
  const SolveReport rep = ground_state_solve(grid, lambda, *cfg.mu, opts);

  std::string out =
      "N,R,M,lambda,mu,identity_u,identity_v,combined,boundary_u,boundary_v\n";
  const PohozaevReport& p = rep.pohozaev;
  const std::string cells[10] = {std::to_string(cfg.N),
                                 format_double(cfg.R),
                                 std::to_string(cfg.M),
                                 format_double(lambda),
                                 format_double(*cfg.mu),
                                 format_double(p.identity_u),
                                 format_double(p.identity_v),
                                 format_double(p.combined),
                                 format_double(p.boundary_u),
                                 format_double(p.boundary_v)};
  out += csv_row(cells);
  return out;
}

std::string verify_report(const CheckOptions& opts, bool* all_pass) {
  const std::vector<CheckResult> results = all_checks(opts);
  bool ok = true;
  std::string out;
  std::size_t width = 0;
  for (const CheckResult& r : results) width = std::max(width, r.name.size());
  for (const CheckResult& r : results) {
    ok = ok && r.pass;
    out += r.pass ? "PASS  " : "FAIL  ";
    out += r.name;
    out.append(width - r.name.size() + 2, ' ');
    out += "measured=" + format_double(r.measured) + "  bound=" + format_double(r.bound);
    out += '\n';
  }
  out += ok ? "all invariants hold\n" : "INVARIANT FAILURES PRESENT\n";
  if (all_pass) *all_pass = ok;
  return out;
}

} // namespace nehari
