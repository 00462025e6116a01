#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "screenlab/selberg.hpp"

using namespace screenlab;
using selberg::QuadratureOptions;
using selberg::SelbergParams;

namespace {

QuadratureOptions opts(double tol = 1e-10) {
  QuadratureOptions o;
  o.tol = tol;
  return o;
}

SelbergParams params2(const Rational& m1, const Rational& m2, const Rational& m12) {
  return SelbergParams::n2(m1, m2, Rational(0), m12);
}

Rational random_unit_rational(std::mt19937& rng, int max_den = 11) {
  std::uniform_int_distribution<int> den(2, max_den);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(1, d - 1);
  return Rational(num(rng), d);
}

}  // namespace

TEST_CASE("convergence predicate") {
  CHECK(selberg::selberg_convergent(SelbergParams::uniform(3, Rational(0), Rational(0), Rational(0)))
            .convergent);
  const auto bad = selberg::selberg_convergent(params2(Rational(0), Rational(0), Rational(-1)));
  CHECK_FALSE(bad.convergent);
  REQUIRE(bad.violations.size() >= 1);
  CHECK(bad.violations.front().find("pair condition") != std::string::npos);
  CHECK(selberg::selberg_convergent(params2(Rational(1, 3), Rational(1, 5), Rational(1, 7)))
            .convergent);
  // tail condition: m_2 <= -1 diverges at z -> 0
  CHECK_FALSE(
      selberg::selberg_convergent(params2(Rational(1, 3), Rational(-1), Rational(1, 7)))
          .convergent);
}

TEST_CASE("basic values") {
  SelbergParams unit;
  unit.m = {Rational(0)};
  unit.mbar = {Rational(0)};
  CHECK(selberg::selberg(unit, opts()).value.real() == doctest::Approx(1.0).epsilon(1e-10));

  // n = 1 is the Euler Beta integral
  SelbergParams b;
  b.m = {Rational(1, 5)};
  b.mbar = {Rational(1, 7)};
  const auto rb = selberg::selberg(b, opts());
  CHECK(rb.value.real() ==
        doctest::Approx(beta(1.2, 8.0 / 7.0).real()).epsilon(1e-10));

  // ordered 2-simplex volume
  const auto r2 = selberg::selberg(params2(Rational(0), Rational(0), Rational(0)), opts());
  CHECK(r2.value.real() == doctest::Approx(0.5).epsilon(1e-10));

  // n = 0 empty product
  SelbergParams empty;
  CHECK(selberg::selberg(empty).value == Complex(1, 0));
}

TEST_CASE("closed n=2 form against quadrature") {
  CHECK(selberg::selberg_closed_n2(Rational(0), Rational(0), Rational(0)).real() ==
        doctest::Approx(0.5));
  const auto quad =
      selberg::selberg(params2(Rational(1, 3), Rational(1, 5), Rational(1, 7)), opts());
  const Complex closed =
      selberg::selberg_closed_n2(Rational(1, 3), Rational(1, 5), Rational(1, 7));
  CHECK(std::abs(quad.value - closed) < 1e-8);
  CHECK_THROWS_AS(selberg::selberg_closed_n2(Rational(-1), Rational(-1, 2), Rational(-1, 2)),
                  PoleError);
}

TEST_CASE("closed n=2 on random parameters") {
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    const Rational m1 = random_unit_rational(rng);
    const Rational m2 = random_unit_rational(rng);
    const Rational m12 = random_unit_rational(rng);
    const auto quad = selberg::selberg(params2(m1, m2, m12), opts());
    const Complex closed = selberg::selberg_closed_n2(m1, m2, m12);
    CHECK(std::abs(quad.value - closed) < 1e-9);
  }
}

TEST_CASE("product formula") {
  // k = 1 reduces to Euler Beta
  CHECK(std::abs(selberg::selberg_product_formula(Rational(3, 2), Rational(5, 4), Rational(1, 3), 1) -
                 beta(1.5, 1.25)) < 1e-13);

  // k = 2, a = b = 1, c = 1/2 <-> Sel(0;0;1)
  const auto q2 = selberg::selberg(
      SelbergParams::uniform(2, Rational(0), Rational(0), Rational(1)), opts());
  const Complex p2 =
      selberg::selberg_product_formula(Rational(1), Rational(1), Rational(1, 2), 2);
  CHECK(std::abs(q2.value - p2) < 1e-6 * std::abs(p2));

  // k = 3, a = b = 2, c = 1 <-> Sel(1;1;2)
  const auto q3 = selberg::selberg(
      SelbergParams::uniform(3, Rational(1), Rational(1), Rational(2)), opts(1e-8));
  const Complex p3 =
      selberg::selberg_product_formula(Rational(2), Rational(2), Rational(1), 3);
  CHECK(std::abs(q3.value - p3) < 1e-4 * std::abs(p3));

  CHECK_THROWS_AS(
      selberg::selberg_product_formula(Rational(0), Rational(1), Rational(1, 2), 2),
      PoleError);
}

TEST_CASE("reduction identity") {
  // n = 2 reproduces the closed form exactly
  const auto [pref2, red2] = selberg::selberg_reduce_first(
      params2(Rational(1, 3), Rational(1, 5), Rational(1, 7)));
  const auto tail2 = selberg::selberg(red2, opts());
  const Complex via_reduction = pref2 * tail2.value;
  const Complex closed =
      selberg::selberg_closed_n2(Rational(1, 3), Rational(1, 5), Rational(1, 7));
  CHECK(std::abs(via_reduction - closed) < 1e-9);

  // n = 1: prefactor 1/(1+m), empty product 1 -> B(m+1, 1)
  SelbergParams one;
  one.m = {Rational(1, 3)};
  one.mbar = {Rational(0)};
  const auto [pref1, red1] = selberg::selberg_reduce_first(one);
  CHECK(red1.n() == 0);
  CHECK(std::abs(pref1 * selberg::selberg(red1).value -
                 beta(4.0 / 3.0, 1.0)) < 1e-13);

  // n = 3 random small parameters against 3-d quadrature
  std::mt19937 rng(7);
  for (int t = 0; t < 3; ++t) {
    SelbergParams p;
    p.m = {random_unit_rational(rng), random_unit_rational(rng), random_unit_rational(rng)};
    p.mbar = {Rational(0), Rational(0), Rational(0)};
    p.mm[{0, 1}] = random_unit_rational(rng);
    p.mm[{0, 2}] = random_unit_rational(rng);
    p.mm[{1, 2}] = random_unit_rational(rng);
    const auto whole = selberg::selberg(p, opts(1e-9));
    const auto [pref, red] = selberg::selberg_reduce_first(p);
    const auto tail = selberg::selberg(red, opts(1e-9));
    CHECK(std::abs(whole.value - pref * tail.value) < 1e-5 * std::abs(whole.value));
  }
}

TEST_CASE("positivity for nonnegative parameters") {
  std::mt19937 rng(11);
  for (int t = 0; t < 5; ++t) {
    SelbergParams p;
    p.m = {random_unit_rational(rng), random_unit_rational(rng)};
    p.mbar = {random_unit_rational(rng), random_unit_rational(rng)};
    p.mm[{0, 1}] = random_unit_rational(rng);
    CHECK(selberg::selberg(p, opts()).value.real() > 0);
  }
}

TEST_CASE("error-estimate honesty under refinement") {
  const SelbergParams p = params2(Rational(-1, 3), Rational(1, 5), Rational(-1, 7));
  QuadratureOptions coarse = opts(1e-6);
  const auto r1 = selberg::selberg(p, coarse);
  const auto r2 = selberg::selberg(p, opts(1e-12));
  CHECK(std::abs(r1.value - r2.value) <= r1.abs_error_estimate + 1e-12);
}

TEST_CASE("large-m decay matches the Beta-product bound") {
  // Sel(t,t;0;m12) ~ C * (2t)^{-1-m12} t^{-1}; the ratio must stay within a
  // decade over t in {8, 16, 32}
  const Rational m12(1, 2);
  for (long t : {8L, 16L, 32L}) {
    const auto r = selberg::selberg(params2(Rational(t), Rational(t), m12), opts(1e-12));
    const double bound =
        std::pow(2.0 * t, -1.0 - m12.to_double()) * std::pow(static_cast<double>(t), -1.0);
    const double ratio = r.value.real() / bound;
    CHECK(ratio > 0.1);
    CHECK(ratio < 10.0);
  }
}

TEST_CASE("divergent parameters are rejected before any quadrature") {
  CHECK_THROWS_AS(selberg::selberg(params2(Rational(0), Rational(0), Rational(-1))),
                  PreconditionError);
  CHECK_THROWS_AS(selberg::selberg(params2(Rational(1, 3), Rational(-1), Rational(1, 7))),
                  PreconditionError);
  // m_1 = -1 alone converges: z_1 stays above z_2
  const auto r = selberg::selberg(params2(Rational(-1), Rational(0), Rational(0)));
  CHECK(r.value.real() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("monte carlo path for n = 4") {
  // unit integrand: ordered-simplex volume 1/4! = 1/24
  SelbergParams p = SelbergParams::uniform(4, Rational(0), Rational(0), Rational(0));
  QuadratureOptions o = opts();
  o.seed = 42;
  const auto r = selberg::selberg(p, o);
  CHECK(r.method == Method::monte_carlo);
  CHECK(std::abs(r.value.real() - 1.0 / 24.0) < 3.0 * std::max(r.abs_error_estimate, 1e-6));

  // determinism: same seed gives bit-identical values
  const auto r2 = selberg::selberg(p, o);
  CHECK(r.value.real() == r2.value.real());

  // a mildly singular case against the known closed form:
  // Sel(0;0;m_ij=1) at n=4 is the k=4 Selberg product with a=b=1, c=1/2
  SelbergParams s = SelbergParams::uniform(4, Rational(0), Rational(0), Rational(1));
  const auto rs = selberg::selberg(s, o);
  const Complex expected =
      selberg::selberg_product_formula(Rational(1), Rational(1), Rational(1, 2), 4);
  CHECK(std::abs(rs.value - expected) < 5e-3 * std::abs(expected));
}
