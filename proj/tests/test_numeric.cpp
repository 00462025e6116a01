#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "screenlab/numeric.hpp"

using namespace screenlab;

namespace {

// Test-only quadrature oracle: adaptive Simpson, independent of the
// tanh-sinh machinery used by the library.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, eps / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, eps / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps = 1e-13) {
  const double m = 0.5 * (a + b);
  return adaptive_simpson(f, a, b, f(a), f(m), f(b), eps, 40);
}

Rational random_rational(std::mt19937& rng, int num_range, int max_den) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-2/4") == Rational(-1, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), PreconditionError);
  CHECK_THROWS_AS(Rational::parse("abc"), PreconditionError);

  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
  CHECK(Rational(-7, 2).floor() == Rational(-4));
  CHECK(Rational(-1, 2).mod2() == Rational(3, 2));
  CHECK(Rational(9, 2).mod2() == Rational(1, 2));
}

TEST_CASE("integrality test is exact") {
  CHECK(is_integer(Rational(3, 1)));
  CHECK_FALSE(is_integer(Rational(-1, 2)));
  CHECK(is_integer(Rational(14, 7)));
  // huge exact cancellation, not a float test
  Rational x(1, 3);
  Rational sum = x + x + x;
  CHECK(is_integer(sum));
}

TEST_CASE("phase_eval on the quarter grid is exact") {
  CHECK(phase_eval(Rational(0)) == Complex(1, 0));
  CHECK(phase_eval(Rational(1)) == Complex(-1, 0));
  CHECK(phase_eval(Rational(1, 2)) == Complex(0, 1));
  CHECK(phase_eval(Rational(-1, 2)) == Complex(0, -1));
  CHECK(phase_eval(Rational(5)) == Complex(-1, 0));
}

TEST_CASE("phase product equals phase of sum") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Rational a = random_rational(rng, 40, 23);
    const Rational b = random_rational(rng, 40, 23);
    const Complex lhs = phase_eval(a) * phase_eval(b);
    const Complex rhs = phase_eval(a + b);
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }
}

TEST_CASE("phase exponent equality is mod 2") {
  CHECK(PhaseExponent(Rational(1, 3)) == PhaseExponent(Rational(7, 3)));
  CHECK(PhaseExponent(Rational(-1, 3)) == PhaseExponent(Rational(5, 3)));
  CHECK(PhaseExponent(Rational(1, 3)) != PhaseExponent(Rational(4, 3)));
  const PhaseExponent p = PhaseExponent(Rational(3, 2)) * PhaseExponent(Rational(3, 2));
  CHECK(p == PhaseExponent(Rational(1)));
}

TEST_CASE("beta basic values") {
  CHECK(std::abs(beta(1, 1) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(beta(2, 1) - Complex(0.5, 0)) < 1e-14);
  CHECK_THROWS_AS(beta(0, 1), PoleError);
  CHECK_THROWS_AS(beta(1, -2), PoleError);
  CHECK_THROWS_AS(beta(0.5, -0.5), PoleError);  // a + b = 0
}

TEST_CASE("beta against direct quadrature") {
  // B(6/5, 8/7) = int_0^1 z^{1/5} (1-z)^{1/7} dz
  const double oracle =
      integrate([](double z) { return std::pow(z, 0.2) * std::pow(1 - z, 1.0 / 7.0); }, 0, 1);
  CHECK(std::abs(beta(6.0 / 5.0, 8.0 / 7.0).real() - oracle) < 1e-10);
}

TEST_CASE("beta symmetry and recurrence on random arguments") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.05, 8.0);
  for (int t = 0; t < 100; ++t) {
    const double a = dist(rng), b = dist(rng);
    CHECK(std::abs(beta(a, b) - beta(b, a)) < 1e-13 * std::abs(beta(a, b)));
    const Complex lhs = beta(a + 1, b);
    const Complex rhs = beta(a, b) * (a / (a + b));
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("beta at negative non-integer arguments via reflection") {
  // B(-1/2, 3/2) = Gamma(-1/2) Gamma(3/2) / Gamma(1) = -2 sqrt(pi) * sqrt(pi)/2 = -pi
  CHECK(std::abs(beta(-0.5, 1.5) - Complex(-kPi, 0)) < 1e-12);
}

TEST_CASE("beta stays accurate out to arguments of size 50") {
  // climb B(a + k, b) from a small anchor with the exact recurrence
  // B(a+1, b) = B(a, b) a/(a+b); drift beyond 1e-12 relative would show
  const double a0 = 0.75, b = 35.5;
  Complex ladder = beta(a0, b);
  for (int k = 0; k < 49; ++k) {
    const double a = a0 + k;
    ladder *= a / (a + b);
    const Complex direct = beta(a + 1, b);
    CHECK(std::abs(direct - ladder) < 1e-12 * std::abs(ladder));
  }
}

TEST_CASE("generalized binomial") {
  CHECK(binomial(5, 2) == doctest::Approx(10));
  CHECK(binomial(0.5, 2) == doctest::Approx(-0.125));
  CHECK(binomial(3, 5) == doctest::Approx(0));
  CHECK(binomial_exact(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(binomial_exact(Rational(3), 5) == Rational(0));
  CHECK(binomial_exact(Rational(-1), 3) == Rational(-1));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto q = gauss_legendre(8, 0, 2);
  double s = 0;
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    const double x = q.nodes[i];
    s += q.weights[i] * (x * x * x * x * x);  // x^5 on [0,2] -> 64/6
  }
  CHECK(s == doctest::Approx(64.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  const auto q = tanh_sinh(5);
  double s = 0;
  for (size_t i = 0; i < q.nodes.size(); ++i)
    s += q.weights[i] / std::sqrt(q.nodes[i]);  // int_0^1 z^{-1/2} = 2
  CHECK(s == doctest::Approx(2.0).epsilon(1e-10));
}
