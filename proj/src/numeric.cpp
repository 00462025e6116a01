#include "screenlab/numeric.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "screenlab/errors.hpp"

namespace screenlab {

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw PreconditionError("Rational::parse: empty string");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class num(text);
      return Rational(mpq_class(num));
    }
    mpz_class num(text.substr(0, slash));
    mpz_class den(text.substr(slash + 1));
    if (den == 0) throw PreconditionError("Rational::parse: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw PreconditionError("Rational::parse: bad rational literal '" + text + "'");
  }
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

double sin_pi(double x) {
  double r = std::remainder(x, 2.0);  // r in [-1, 1]
  // use sin(pi r) = sign * sin(pi * dist-to-nearest-integer)
  double n = std::round(r);
  double f = r - n;  // in [-1/2, 1/2]
  double s = std::sin(kPi * f);
  return (std::fabs(n) == 1.0) ? -s : s;
}

double cos_pi(double x) {
  double r = std::remainder(x, 2.0);
  double n = std::round(r);
  double f = r - n;
  double c = std::cos(kPi * f);
  return (std::fabs(n) == 1.0) ? -c : c;
}

Complex phase_eval(const Rational& m) {
  const Rational r = m.mod2();  // [0, 2)
  // Exact values on the quarter grid keep identities like e^{i pi} = -1 exact.
  if (r.is_integer()) return (r.is_zero()) ? Complex(1, 0) : Complex(-1, 0);
  if (r.den() == 2) return (r.num() == 1) ? Complex(0, 1) : Complex(0, -1);
  const double t = r.to_double();  // [0, 2)
  return Complex(cos_pi(t), sin_pi(t));
}

Complex phase_eval(const PhaseExponent& p) { return phase_eval(p.exponent()); }

SignedLogGamma log_gamma_signed(double x) {
  if (x > 0) return {std::lgamma(x), 1};
  if (x == std::floor(x))
    throw PoleError("log_gamma_signed: pole at non-positive integer");
  // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)), and 1-x > 1 > 0.
  const double s = sin_pi(x);
  const double log_abs = std::log(kPi / std::fabs(s)) - std::lgamma(1.0 - x);
  return {log_abs, s > 0 ? 1 : -1};
}

Complex beta(double a, double b) {
  const auto is_nonpos_int = [](double x) { return x <= 0 && x == std::floor(x); };
  if (is_nonpos_int(a) || is_nonpos_int(b) || is_nonpos_int(a + b))
    throw PoleError("beta: argument at a non-positive integer");
  const SignedLogGamma ga = log_gamma_signed(a);
  const SignedLogGamma gb = log_gamma_signed(b);
  const SignedLogGamma gab = log_gamma_signed(a + b);
  const double value =
      ga.sign * gb.sign * gab.sign * std::exp(ga.log_abs + gb.log_abs - gab.log_abs);
  return Complex(value, 0.0);
}

double binomial(double m, long k) {
  if (k < 0) return 0.0;
  double c = 1.0;
  for (long t = 0; t < k; ++t) c *= (m - static_cast<double>(t)) / static_cast<double>(t + 1);
  return c;
}

Rational binomial_exact(const Rational& m, long k) {
  if (k < 0) return Rational(0);
  Rational c(1);
  for (long t = 0; t < k; ++t) c *= (m - Rational(t)) / Rational(t + 1);
  return c;
}

Complex expm1_2pii_over_2pii(const Rational& m) {
  if (m.is_integer()) return Complex(0, 0);
  // (e^{2 pi i m} - 1)/(2 pi i) = sin(pi m) e^{i pi m} / pi, exact-reduced.
  const Rational r = m.mod2();
  const double t = r.to_double();
  const double s = sin_pi(t);
  return (s / kPi) * Complex(cos_pi(t), sin_pi(t));
}

Quadrature1d gauss_legendre(int n, double a, double b) {
  Quadrature1d q;
  q.nodes.resize(n);
  q.weights.resize(n);
  // Newton iteration from the Chebyshev initial guess; standard [-1,1] rule
  // mapped onto [a, b].
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.nodes[i] = 0.5 * (a + b) - 0.5 * (b - a) * x;
    q.nodes[n - 1 - i] = 0.5 * (a + b) + 0.5 * (b - a) * x;
    q.weights[i] = q.weights[n - 1 - i] = 0.5 * (b - a) * w;
  }
  return q;
}

Quadrature1d tanh_sinh(int level) {
  // u(t) = (1 + tanh((pi/2) sinh t)) / 2 maps R onto (0,1); truncate where
  // the weight underflows. Step h = 1/2^level.
  Quadrature1d q;
  const double h = 1.0 / static_cast<double>(1 << level);
  const double t_max = 6.5;
  const long kmax = static_cast<long>(t_max / h);
  for (long k = -kmax; k <= kmax; ++k) {
    const double t = k * h;
    const double sh = (kPi / 2.0) * std::sinh(t);
    const double ch = std::cosh(sh);
    const double w = h * (kPi / 4.0) * std::cosh(t) / (ch * ch);
    if (w < 1e-320) continue;
    // sigmoid form keeps full relative precision for u near 0
    const double u = 1.0 / (1.0 + std::exp(-2.0 * sh));
    if (u <= 0.0 || u >= 1.0) continue;
    q.nodes.push_back(u);
    q.weights.push_back(w);
  }
  return q;
}

}  // namespace screenlab
