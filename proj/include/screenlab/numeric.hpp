#ifndef SCREENLAB_NUMERIC_HPP
#define SCREENLAB_NUMERIC_HPP

#include <complex>
#include <vector>

#include "screenlab/rational.hpp"

namespace screenlab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Evaluates e^{i*pi*m} from the reduced representative of m mod 2, so large
/// exponents never reach the trig functions. Quarter-turn multiples come out
/// exactly (+-1, +-i).
Complex phase_eval(const PhaseExponent& p);
Complex phase_eval(const Rational& m);

/// sin(pi*x) / cos(pi*x) with argument reduction done on x, not on pi*x.
double sin_pi(double x);
double cos_pi(double x);

/// log |Gamma(x)| together with the sign of Gamma(x); x must not be a
/// non-positive integer. Negative arguments go through Euler reflection.
struct SignedLogGamma {
  double log_abs;
  int sign;
};
SignedLogGamma log_gamma_signed(double x);

/// Euler Beta B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), valid for negative
/// non-integer arguments. Throws PoleError when a, b or a+b is a
/// non-positive integer (checked exactly on the doubles).
Complex beta(double a, double b);

/// Generalized binomial coefficient C(m, k) = m(m-1)...(m-k+1)/k!.
double binomial(double m, long k);
Rational binomial_exact(const Rational& m, long k);

/// (e^{2*pi*i*m} - 1) / (2*pi*i), evaluated from the exact exponent.
Complex expm1_2pii_over_2pii(const Rational& m);

/// Nodes/weights of an n-point Gauss-Legendre rule on [a, b].
struct Quadrature1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature1d gauss_legendre(int n, double a, double b);

/// tanh-sinh (double-exponential) rule on (0, 1); clusters nodes at both
/// endpoints so power-law endpoint singularities integrate cleanly without
/// knowing the exponents. `level` doubles the node density per increment.
Quadrature1d tanh_sinh(int level);

}  // namespace screenlab

#endif
