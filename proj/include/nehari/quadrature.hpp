#ifndef NEHARI_QUADRATURE_HPP
#define NEHARI_QUADRATURE_HPP

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace nehari {

/// Rule and resolution for radial integrals over R^N. The default composite
/// Gauss rule integrates in the angle variable of the substitution
/// r = scale * tan(theta), which maps [0, inf) onto [0, pi/2) and removes
/// the algebraic tail of instanton-type integrands exactly. The tanh-sinh
/// rule integrates in a double-exponential variable and is kept as an
/// independent cross-check.
struct QuadratureScheme {
  enum class Rule { composite_gauss, tanh_sinh };
  Rule rule = Rule::composite_gauss;
  double truncation_radius = std::numeric_limits<double>::infinity();
  int node_count = 2048;
};

/// Surface measure of the unit sphere in R^N: 2 pi^(N/2) / Gamma(N/2).
double surface_measure(int N);

/// Sum with a fixed pairwise order, independent of evaluation batching.
double pairwise_sum(std::span<const double> x);

/// omega_{N-1} * integral_0^rmax g(r) r^(N-1) dr, i.e. the integral of the
/// radial function g(|x|) over R^N (truncated at scheme.truncation_radius
/// if finite). `scale` sets the substitution r = scale*tan(theta).
double radial_integral(const std::function<double(double)>& g, int N, double scale,
                       const QuadratureScheme& scheme = {});

} // namespace nehari

#endif
