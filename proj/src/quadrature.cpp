#include "nehari/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace nehari {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Nodes and weights of the 16-point Gauss-Legendre rule on [-1, 1];
// composite panels of this rule make up the requested node budget.
struct Gauss16 {
  double x[16];
  double w[16];
  Gauss16() {
    // Newton on Legendre P_16, seeded by the Chebyshev angles
    const int n = 16;
    for (int i = 0; i < n / 2; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        const double z1 = z;
        z = z1 - p1 / pp;
        if (std::abs(z - z1) < 1e-15) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
  }
};

const Gauss16& gauss16() {
  static const Gauss16 g;
  return g;
}

double integrate_composite_gauss(const std::function<double(double)>& g, int N,
                                 double scale, double rmax, int node_count) {
  const Gauss16& q = gauss16();
  const int panels = std::max(1, node_count / 16);
  const double tmax = std::isinf(rmax) ? 0.5 * kPi : std::atan(rmax / scale);
  std::vector<double> panel_sums(panels);
  for (int p = 0; p < panels; ++p) {
    const double a = tmax * p / panels;
    const double b = tmax * (p + 1) / panels;
    double s = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double th = 0.5 * (b - a) * q.x[i] + 0.5 * (a + b);
      const double c = std::cos(th);
      const double r = scale * std::tan(th);
      const double dr = scale / (c * c);
      s += q.w[i] * g(r) * std::pow(r, N - 1) * dr;
    }
    panel_sums[p] = 0.5 * (b - a) * s;
  }
  return pairwise_sum(panel_sums);
}

// Double-exponential rule on (0, rmax): r = rmax * exp(-a exp(-t)) style
// mappings are awkward for the half line, so use r = exp(c sinh t) which
// compresses both endpoints; trapezoid in t.
double integrate_tanh_sinh(const std::function<double(double)>& g, int N,
                           double scale, double rmax, int node_count) {
  const double c = 1.0;
  const double tmax = 4.0;
  const int n = std::max(64, node_count);
  const double ht = 2.0 * tmax / n;
  std::vector<double> terms(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = -tmax + i * ht;
    const double r = scale * std::exp(c * std::sinh(t));
    if (r >= rmax) { terms[i] = 0.0; continue; }
    const double dr = r * c * std::cosh(t);
    const double wgt = (i == 0 || i == n) ? 0.5 : 1.0;
    terms[i] = wgt * g(r) * std::pow(r, N - 1) * dr;
  }
  return ht * pairwise_sum(terms);
}

} // namespace

double surface_measure(int N) {
  if (N < 1) throw std::invalid_argument("surface_measure: N >= 1 required");
  return 2.0 * std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N);
}

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

double radial_integral(const std::function<double(double)>& g, int N, double scale,
                       const QuadratureScheme& scheme) {
  if (N < 1) throw std::invalid_argument("radial_integral: N >= 1 required");
  if (!(scale > 0.0)) throw std::invalid_argument("radial_integral: scale > 0 required");
  const double om = surface_measure(N);
  switch (scheme.rule) {
    case QuadratureScheme::Rule::tanh_sinh:
      return om * integrate_tanh_sinh(g, N, scale, scheme.truncation_radius, scheme.node_count);
    case QuadratureScheme::Rule::composite_gauss:
    default:
      return om * integrate_composite_gauss(g, N, scale, scheme.truncation_radius,
                                            scheme.node_count);
  }
}

} // namespace nehari
