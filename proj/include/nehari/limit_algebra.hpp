#ifndef NEHARI_LIMIT_ALGEBRA_HPP
#define NEHARI_LIMIT_ALGEBRA_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nehari/dimension.hpp"

namespace nehari {

enum class Branch { lower, upper, unique, double_root };

std::string to_string(Branch b);

/// A strictly positive zero m of f_N together with the coupling amplitudes
/// it induces: k = m^{1/(2*-2)}, l = m^{(3-2*)/(2*-2)}.
struct CouplingRoot {
  double m = 0.0;
  double k = 0.0;
  double l = 0.0;
  Branch branch = Branch::unique;
};

enum class Regime { NontrivialGround, Threshold, SemitrivialGround, NoNehari };

std::string to_string(Regime r);

/// Ground-state level of the limit system at coupling mu, in units fixed by
/// the Sobolev constant S passed in. A is NaN in the NoNehari regime.
struct LevelReport {
  double mu = 0.0;
  int N = 4;
  double A = 0.0;
  std::optional<double> semitrivial_level;
  Regime regime = Regime::NontrivialGround;
  std::optional<CouplingRoot> minimizer_coupling;
};

/// Regime thresholds for a given dimension. mu_N bounds the existence of
/// nontrivial limit couplings, mu_star marks the nontrivial/semitrivial
/// switch, interval_upper is the right end of the admissible interval for
/// the bounded-domain existence result.
struct ThresholdSet {
  double mu_N = 0.0;
  std::optional<double> mu_star;
  double interval_upper = 0.0;
};

/// Result of minimizing psi_N over m > 0. interior is absent when psi_N has
/// no interior local minimum (mu >= mu_N for N in {4,5}, mu >= 1 for N=6).
struct PsiMinimum {
  std::optional<double> m_min;
  std::optional<double> psi_min;
  double boundary_value = 0.0; // limit of psi_N as m -> 0+
};

/// f_N(m) = m^(2*-1) - m^(2*-3) + mu. Rejects m <= 0.
double f_N(double m, double mu, int N);
double f_N_derivative(double m, double mu, int N);

/// All strictly positive zeros of f_N, ascending, with branch labels.
/// Count: 2 for N in {4,5} and 0 < mu < mu_N, 1 at mu = 0 or mu = mu_N,
/// 1 for N = 6 with mu < 1, 1 for N >= 7 and any mu >= 0, 0 otherwise.
std::vector<CouplingRoot> roots_fN(double mu, int N);

/// (k,l) pairs induced by each root; every returned pair satisfies the
/// coupling system k^(2*-3) l = 1, mu l^(2*-1) + k^(2*-1) = l.
std::vector<std::pair<double, double>> coupling_solutions(double mu, int N);

/// psi_N(m) = ((2*-1)m^2+1)^(2*/(2*-2)) / ((2*-1)(2* m^(2*-1)+mu)^(2/(2*-2))).
double psi_N(double m, double mu, int N);

/// Limit of psi_N as m -> 0+ (finite for mu > 0, +inf for mu = 0).
double psi_N_boundary(double mu, int N);

/// Interior minimum of psi_N located by golden-section plus a bisection on
/// the finite-difference derivative. Independent of the root solver.
PsiMinimum minimize_psi(double mu, int N);

/// mu_N: upper coupling bound for nontrivial limit states.
/// 2sqrt(3)/9 (N=4), 6/(7*7^(1/6)) (N=5), 1 (N=6), +inf (N>=7).
double mu_existence_threshold(int N);

/// Switch value where the interior minimum of psi_N meets its boundary
/// value: sqrt(6)/9 for N=4, bisected numerically for N=5, 1 for N=6,
/// absent for N >= 7.
std::optional<double> mu_star(int N);

ThresholdSet thresholds(int N);

/// Best constant of the critical Sobolev embedding on R^N,
/// S = N(N-2) pi (Gamma(N/2)/Gamma(N))^(2/N).
double sobolev_constant(int N);

/// Ground-state level and regime classification of the limit system.
LevelReport ground_level(double mu, int N, double S);

} // namespace nehari

#endif
