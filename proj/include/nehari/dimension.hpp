#ifndef NEHARI_DIMENSION_HPP
#define NEHARI_DIMENSION_HPP

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nehari {

/// Reduced fraction with positive denominator. Used to carry the critical
/// exponent 2N/(N-2) and the exponents derived from it exactly, so that
/// no floating-point exponent arithmetic leaks into power evaluations.
struct Rational {
  long long num = 0;
  long long den = 1;

  constexpr Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
  Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
  Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
    return {num * o.den, den * o.num};
  }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

/// x^e with a rational exponent, evaluated through std::pow on the reduced
/// fraction. x must be positive unless the exponent is a nonnegative integer.
inline double pow_rat(double x, const Rational& e) {
  if (e.num == 0) return 1.0;
  if (e.den == 1 && e.num > 0 && e.num <= 4) {
    double p = x;
    for (long long i = 1; i < e.num; ++i) p *= x;
    return p;
  }
  return std::pow(x, e.value());
}

/// Ambient dimension N >= 4 together with the critical Sobolev exponent
/// 2* = 2N/(N-2) and the exponent combinations the coupling algebra needs.
class Dimension {
public:
  explicit Dimension(int N) : N_(N) {
    if (N < 4) throw std::invalid_argument("Dimension: N >= 4 required");
  }

  int N() const { return N_; }

  Rational two_star() const { return {2LL * N_, N_ - 2LL}; }

  /// 2* - k as an exact fraction.
  Rational two_star_minus(int k) const { return two_star() - Rational{k, 1}; }

  /// 1/(2*-2) = (N-2)/4
  Rational inv_gap() const { return {N_ - 2LL, 4LL}; }

  /// (3-2*)/(2*-2) = (N-6)/4, the exponent taking a root m to l.
  Rational l_exponent() const { return {N_ - 6LL, 4LL}; }

  /// 2/(2*-2) = (N-2)/2
  Rational two_over_gap() const { return {N_ - 2LL, 2LL}; }

  /// 2*/(2*-2) = N/2
  Rational ts_over_gap() const { return {N_, 2LL}; }

  double ts() const { return two_star().value(); }

private:
  int N_;
};

/// Critical exponent 2N/(N-2) as an exact fraction; rejects N < 4.
inline Rational two_star(int N) { return Dimension(N).two_star(); }

} // namespace nehari

#endif
