#include "nehari/limit_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nehari/errors.hpp"

namespace nehari {

namespace {

constexpr double kDoubleRootTol = 1e-12;
const double kInf = std::numeric_limits<double>::infinity();
const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stationary point of f_N on (0,inf) for N in {4,5}:
// mhat = ((2*-3)/(2*-1))^(1/2) = ((6-N)/(N+2))^(1/2).
double f_min_point(int N) { return std::sqrt((6.0 - N) / (N + 2.0)); }

// Bisection with geometric midpoints (the root may sit many orders of
// magnitude below the bracket end), run to relative width `width`, then a
// short Newton polish. `increasing` gives the sign of f on the hi side.
double bisect_root(double lo, double hi, double mu, int N, bool increasing, double width) {
  while (hi - lo > width * hi) {
    const double mid = std::sqrt(lo) * std::sqrt(hi); // geometric mean, underflow-safe
    const double fm = f_N(mid, mu, N);
    if ((fm < 0.0) == increasing) lo = mid;
    else hi = mid;
    if (mid == lo || mid == hi) break; // spacing limit
  }
  double m = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double d = f_N_derivative(m, mu, N);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double step = f_N(m, mu, N) / d;
    const double next = m - step;
    if (next > 0.0 && std::isfinite(next)) m = next;
  }
  return m;
}

double semitrivial_level_value(double mu, int N, double S) {
  const Dimension dim(N);
  const double tsm1 = dim.two_star_minus(1).value();
  return pow_rat(mu, Rational{-(N - 2LL), 2LL}) / (N * tsm1) * std::pow(S, 0.5 * N);
}

double nontrivial_level_value(const CouplingRoot& c, int N, double S) {
  const double tsm1 = Dimension(N).two_star_minus(1).value();
  return (c.k * c.k + c.l * c.l / tsm1) / N * std::pow(S, 0.5 * N);
}

CouplingRoot make_root(double m, double mu, int N, Branch branch) {
  const Dimension dim(N);
  CouplingRoot c;
  c.m = m;
  c.k = pow_rat(m, dim.inv_gap());
  c.l = pow_rat(m, dim.l_exponent());
  c.branch = branch;
  // sanity on the coupling system; a failure here is a solver bug
  const Rational tsm1 = dim.two_star_minus(1);
  const Rational tsm3 = dim.two_star_minus(3);
  const double eq1 = pow_rat(c.k, tsm3) * c.l - 1.0;
  const double eq2 = mu * pow_rat(c.l, tsm1) + pow_rat(c.k, tsm1) - c.l;
  if (std::abs(eq1) > 1e-12 || std::abs(eq2) > 1e-10 * std::max(1.0, c.l))
    throw ConvergenceError("coupling root failed the system residual check");
  return c;
}

} // namespace

std::string to_string(Branch b) {
  switch (b) {
    case Branch::lower: return "lower";
    case Branch::upper: return "upper";
    case Branch::unique: return "unique";
    case Branch::double_root: return "double";
  }
  return "?";
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::NontrivialGround: return "NontrivialGround";
    case Regime::Threshold: return "Threshold";
    case Regime::SemitrivialGround: return "SemitrivialGround";
    case Regime::NoNehari: return "NoNehari";
  }
  return "?";
}

double f_N(double m, double mu, int N) {
  const Dimension dim(N);
  if (!(m > 0.0)) throw std::invalid_argument("f_N: m > 0 required");
  return pow_rat(m, dim.two_star_minus(1)) - pow_rat(m, dim.two_star_minus(3)) + mu;
}

double f_N_derivative(double m, double mu, int N) {
  (void)mu;
  const Dimension dim(N);
  if (!(m > 0.0)) throw std::invalid_argument("f_N_derivative: m > 0 required");
  const Rational tsm1 = dim.two_star_minus(1);
  const Rational tsm3 = dim.two_star_minus(3);
  return tsm1.value() * pow_rat(m, tsm1 - Rational{1, 1}) -
         tsm3.value() * pow_rat(m, tsm3 - Rational{1, 1});
}

std::vector<CouplingRoot> roots_fN(double mu, int N) {
  if (!(mu >= 0.0)) throw std::invalid_argument("roots_fN: mu >= 0 required");
  Dimension dim(N);

  if (N >= 7) {
    // f_N is strictly increasing from -inf to +inf: one root.
    if (mu == 0.0) return {make_root(1.0, mu, N, Branch::unique)};
    double lo = 1e-8, hi = 1.0;
    while (f_N(lo, mu, N) > 0.0) lo *= 0.25;
    while (f_N(hi, mu, N) < 0.0) hi *= 2.0;
    return {make_root(bisect_root(lo, hi, mu, N, true, 1e-14), mu, N, Branch::unique)};
  }

  if (N == 6) {
    // f_6(m) = m^2 - (1 - mu)
    if (mu >= 1.0) return {};
    return {make_root(std::sqrt(1.0 - mu), mu, N, Branch::unique)};
  }

  // N in {4,5}
  const double muN = mu_existence_threshold(N);
  const double mhat = f_min_point(N);
  if (mu > muN + kDoubleRootTol) return {};
  if (std::abs(mu - muN) < kDoubleRootTol)
    return {make_root(mhat, mu, N, Branch::double_root)};
  if (mu == 0.0) return {make_root(1.0, mu, N, Branch::unique)};

  // two branches, separated by the minimum point of f_N
  const double lower = bisect_root(1e-300, mhat, mu, N, false, 1e-14);
  double hi = std::max(1.0, 2.0 * mhat);
  while (f_N(hi, mu, N) < 0.0) hi *= 2.0;
  const double upper = bisect_root(mhat, hi, mu, N, true, 1e-14);
  return {make_root(lower, mu, N, Branch::lower), make_root(upper, mu, N, Branch::upper)};
}

std::vector<std::pair<double, double>> coupling_solutions(double mu, int N) {
  std::vector<std::pair<double, double>> out;
  for (const CouplingRoot& c : roots_fN(mu, N)) out.emplace_back(c.k, c.l);
  return out;
}

double psi_N(double m, double mu, int N) {
  const Dimension dim(N);
  if (!(m > 0.0)) throw std::invalid_argument("psi_N: m > 0 required");
  const double tsm1 = dim.two_star_minus(1).value();
  const double ts = dim.ts();
  const double denom_base = ts * pow_rat(m, dim.two_star_minus(1)) + mu;
  if (!(denom_base > 0.0)) throw std::invalid_argument("psi_N: degenerate denominator");
  return pow_rat(tsm1 * m * m + 1.0, dim.ts_over_gap()) /
         (tsm1 * pow_rat(denom_base, dim.two_over_gap()));
}

double psi_N_boundary(double mu, int N) {
  const Dimension dim(N);
  if (!(mu >= 0.0)) throw std::invalid_argument("psi_N_boundary: mu >= 0 required");
  if (mu == 0.0) return kInf;
  return 1.0 / (dim.two_star_minus(1).value() * pow_rat(mu, dim.two_over_gap()));
}

PsiMinimum minimize_psi(double mu, int N) {
  if (!(mu >= 0.0)) throw std::invalid_argument("minimize_psi: mu >= 0 required");
  PsiMinimum out;
  out.boundary_value = psi_N_boundary(mu, N);

  // Degenerate tangency and beyond: psi_N is nondecreasing, no interior
  // minimum. Covers N in {4,5,6} past the existence threshold.
  if (N <= 6 && mu > mu_existence_threshold(N) - kDoubleRootTol) return out;

  // descent bracket: start from the stationary point of f_N (N<=5) or from
  // a small m, expand right geometrically until psi increases
  double lo = (N <= 5) ? f_min_point(N) : 1e-6;
  double hi = std::max(2.0 * lo, 2.0);
  while (psi_N(hi, mu, N) <= psi_N(0.5 * hi, mu, N)) {
    hi *= 2.0;
    if (hi > 1e12) return out; // no interior minimum found
  }

  const double gold = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gold * (b - a), d = a + gold * (b - a);
  double fc = psi_N(c, mu, N), fd = psi_N(d, mu, N);
  while (b - a > 1e-8) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gold * (b - a); fc = psi_N(c, mu, N);
    } else {
      a = c; c = d; fc = fd;
      d = a + gold * (b - a); fd = psi_N(d, mu, N);
    }
  }
  double m = 0.5 * (a + b);

  // polish by bisection on a 5-point finite-difference derivative
  auto dpsi = [&](double x) {
    const double s = 1e-3 * std::max(1.0, x);
    return (-psi_N(x + 2 * s, mu, N) + 8 * psi_N(x + s, mu, N) -
            8 * psi_N(x - s, mu, N) + psi_N(x - 2 * s, mu, N)) / (12 * s);
  };
  double wa = m - 1e-5 * std::max(1.0, m), wb = m + 1e-5 * std::max(1.0, m);
  int widen = 0;
  while (!(dpsi(wa) < 0.0 && dpsi(wb) > 0.0) && widen++ < 40) {
    wa -= 0.5 * (m - a);
    wb += 0.5 * (b - m);
    wa = std::max(wa, 0.5 * a);
  }
  if (dpsi(wa) < 0.0 && dpsi(wb) > 0.0) {
    while (wb - wa > 1e-13 * std::max(1.0, m)) {
      const double mid = 0.5 * (wa + wb);
      if (dpsi(mid) < 0.0) wa = mid;
      else wb = mid;
      if (mid == wa || mid == wb) break;
    }
    m = 0.5 * (wa + wb);
  }

  out.m_min = m;
  out.psi_min = psi_N(m, mu, N);
  return out;
}

double mu_existence_threshold(int N) {
  Dimension dim(N); // validates N >= 4
  if (N >= 7) return kInf;
  if (N == 6) return 1.0;
  return 2.0 * (N - 2.0) / (N + 2.0) *
         std::pow((6.0 - N) / (N + 2.0), (6.0 - N) / (2.0 * (N - 2.0)));
}

std::optional<double> mu_star(int N) {
  Dimension dim(N);
  if (N >= 7) return std::nullopt;
  if (N == 4) return std::sqrt(6.0) / 9.0;
  if (N == 6) return 1.0;
  // N = 5: bisect the crossing of the interior psi minimum with the
  // boundary value. Cached: the value is deterministic.
  static const double mu5 = [] {
    auto gap = [](double mu) {
      const PsiMinimum p = minimize_psi(mu, 5);
      return *p.psi_min - p.boundary_value;
    };
    double lo = 1e-6, hi = mu_existence_threshold(5) - 1e-9;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      if (gap(mid) < 0.0) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return mu5;
}

ThresholdSet thresholds(int N) {
  ThresholdSet t;
  t.mu_N = mu_existence_threshold(N);
  t.mu_star = mu_star(N);
  t.interval_upper = t.mu_star ? *t.mu_star : kInf;
  return t;
}

double sobolev_constant(int N) {
  if (N < 3) throw std::invalid_argument("sobolev_constant: N >= 3 required");
  const double pi = 3.14159265358979323846;
  return N * (N - 2.0) * pi *
         std::exp(2.0 / N * (std::lgamma(0.5 * N) - std::lgamma(static_cast<double>(N))));
}

LevelReport ground_level(double mu, int N, double S) {
  if (!(mu >= 0.0)) throw std::invalid_argument("ground_level: mu >= 0 required");
  if (!(S > 0.0)) throw std::invalid_argument("ground_level: S > 0 required");
  Dimension dim(N);

  LevelReport rep;
  rep.mu = mu;
  rep.N = N;
  if (mu > 0.0) rep.semitrivial_level = semitrivial_level_value(mu, N, S);

  if (N >= 7) {
    rep.regime = Regime::NontrivialGround;
    rep.minimizer_coupling = roots_fN(mu, N).front();
    rep.A = nontrivial_level_value(*rep.minimizer_coupling, N, S);
    return rep;
  }

  const double muN = mu_existence_threshold(N);
  const double mus = *mu_star(N);

  if (mu > muN + kDoubleRootTol) {
    rep.regime = Regime::NoNehari;
    rep.A = kNaN;
    return rep;
  }

  if (std::abs(mu - mus) < kDoubleRootTol) {
    rep.regime = Regime::Threshold;
    rep.A = *rep.semitrivial_level;
    if (N == 6) {
      // coupling degenerates continuously to the semitrivial pair
      rep.minimizer_coupling = CouplingRoot{0.0, 0.0, 1.0, Branch::unique};
    } else {
      rep.minimizer_coupling = roots_fN(mu, N).back();
    }
    return rep;
  }

  if (mu > mus) {
    rep.regime = Regime::SemitrivialGround;
    rep.A = *rep.semitrivial_level;
    return rep;
  }

  rep.regime = Regime::NontrivialGround;
  rep.minimizer_coupling = roots_fN(mu, N).back();
  rep.A = nontrivial_level_value(*rep.minimizer_coupling, N, S);
  return rep;
}

} // namespace nehari
