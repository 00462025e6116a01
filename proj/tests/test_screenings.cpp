#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "screenlab/voa.hpp"

using namespace screenlab;
using namespace screenlab::voa;

namespace {

using CElement = VoaElement<Complex>;

monodromy::SeriesOptions series_opts(double tol = 1e-10, int cap = 50'000) {
  monodromy::SeriesOptions o;
  o.tol = tol;
  o.shell_cap = cap;
  return o;
}

double max_diff(const CElement& a, const CElement& b) {
  return (a - b).max_abs_coefficient();
}

Rational random_small_rational(std::mt19937& rng, int max_den = 9) {
  std::uniform_int_distribution<int> den(3, max_den);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(1, d - 1);
  return Rational(num(rng), d);
}

}  // namespace

TEST_CASE("formula route equals zemlja for a single screening") {
  const Lattice lattice = Lattice::rank1(Rational(2, 5));
  const LatticePoint alpha = {Rational(1)};
  const LatticePoint lambda = {Rational(2)};
  const int T = 5;
  const CElement direct = zemlja(lattice, alpha, exp_phi<Complex>(lambda, T), T);
  const CElement formula =
      screening_product_formula(lattice, {alpha}, lambda, T, series_opts());
  CHECK(max_diff(direct, formula) < 1e-12);
}

TEST_CASE("direct and formula routes agree for two screenings") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    // random rank-2 Gram with fractured pairings satisfying smallness
    const Rational g11 = random_small_rational(rng);
    const Rational g22 = random_small_rational(rng);
    const Rational g12 = Rational(1, 2) * random_small_rational(rng, 7);
    const Lattice lattice({{g11, g12}, {g12, g22}});
    const LatticePoint a1 = lattice_basis(2, 0);
    const LatticePoint a2 = lattice_basis(2, 1);
    const LatticePoint lambda = {Rational(1) + Rational(1, 3), Rational(2, 3)};

    monodromy::MonodromyParams probe;
    probe.m = {lattice.inner(a1, lambda), lattice.inner(a2, lambda)};
    probe.mm[{0, 1}] = lattice.inner(a1, a2);
    if (!monodromy::fractured(probe)) continue;

    const int T = 4;
    const CElement direct = screening_product_direct(
        lattice, {a1, a2}, exp_phi<Complex>(lambda, T), T);
    const CElement formula =
        screening_product_formula(lattice, {a1, a2}, lambda, T, series_opts());
    CHECK(max_diff(direct, formula) < 1e-8);
  }
}

TEST_CASE("three screenings at modest truncation") {
  const Lattice lattice({{Rational(2, 7), Rational(-1, 7)}, {Rational(-1, 7), Rational(2, 7)}});
  const LatticePoint a1 = lattice_basis(2, 0);
  const LatticePoint a2 = lattice_basis(2, 1);
  const LatticePoint lambda = {Rational(1, 3), Rational(1, 5)};
  const int T = 3;
  const CElement direct = screening_product_direct(
      lattice, {a1, a2, a1}, exp_phi<Complex>(lambda, T), T);
  const CElement formula = screening_product_formula(
      lattice, {a1, a2, a1}, lambda, T, series_opts(1e-9, 1200));
  CHECK(max_diff(direct, formula) < 1e-6);
}

TEST_CASE("q-commutator at (alpha1, alpha2) = -1 reduces to a single screening") {
  // integral lattice: [z_{a1}, z_{a2}]_+ = z_{a1+a2} on a pure exponential
  const Lattice lattice = Lattice::sl3();
  const LatticePoint a1 = lattice_basis(2, 0);
  const LatticePoint a2 = lattice_basis(2, 1);
  const LatticePoint lambda = {Rational(1), Rational(-1)};
  const int T = 6;
  const auto v = exp_phi<Complex>(lambda, T);
  CElement lhs = screening_product_direct(lattice, {a1, a2}, v, T);
  lhs += screening_product_direct(lattice, {a2, a1}, v, T);
  const CElement rhs = zemlja(lattice, lattice_add(a1, a2), v, T);
  CHECK(max_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("screening smallness predicate") {
  CHECK(screening_smallness(Lattice::rank1(Rational(2, 3)), {{Rational(1)}}));
  CHECK_FALSE(screening_smallness(Lattice::sl2(), {{Rational(1)}}));
}

TEST_CASE("short screening power annihilates generic weights") {
  // (alpha, alpha) = 2/p makes q = e^{2 pi i/p} a primitive p-th root; the
  // relation x^p must kill every generic pure exponential
  for (long p : {2L, 3L}) {
    const Lattice lattice = Lattice::rank1(Rational(2, p));
    const LatticePoint alpha = {Rational(1)};
    nichols::WordCombination relation;
    relation.terms[Coloring(p, 0)] = Complex(1, 0);
    std::mt19937 rng(100 + p);
    for (int t = 0; t < 5; ++t) {
      // generic weight: (alpha, lambda) = c * 2/p with c a generic rational
      const Rational c(1 + static_cast<long>(rng() % 5), 7 + (rng() % 5));
      const LatticePoint lambda = {c};
      const double residue =
          check_nichols_on_vector(lattice, {alpha}, relation, lambda, 4);
      CHECK(residue < 1e-6);
    }
  }
}

TEST_CASE("pole weight survives the screening power") {
  // The special weights 2 m_i + (n-1) m_ij in 2Z make zeta^n vanish on
  // V_lambda -- except where the Selberg integral has its pole. At p = 3 the
  // square of the screening ([2]_q != 0) is the smallest case: the weight
  // m_i = -(n-1)/p - 1 = -4/3 sits on the pole and the power survives,
  // while the same weight class one integer up is annihilated.
  const long p = 3, n = 2;
  const Lattice lattice = Lattice::rank1(Rational(2, p));
  const LatticePoint alpha = {Rational(1)};
  nichols::WordCombination relation;
  relation.terms[Coloring(n, 0)] = Complex(1, 0);

  // (alpha, lambda) = lambda_c (2/p) = -(n-1)/p - 1 => lambda_c = -(n-1+p)/2
  const LatticePoint pole_weight = {Rational(-(n - 1 + p), 2)};
  const double at_pole = check_nichols_on_vector(lattice, {alpha}, relation, pole_weight, 4);
  CHECK(at_pole > 1e-3);

  const LatticePoint off_pole = {pole_weight[0] + Rational(p, 2)};  // m_i = -1/3
  const double away = check_nichols_on_vector(lattice, {alpha}, relation, off_pole, 4);
  CHECK(away < 1e-6);
}

TEST_CASE("fermionic square annihilates at (alpha, alpha) = 1") {
  const Lattice lattice = Lattice::rank1(Rational(1));
  const LatticePoint alpha = {Rational(1)};
  nichols::WordCombination xx;
  xx.terms[{0, 0}] = Complex(1, 0);
  std::mt19937 rng(17);
  for (int t = 0; t < 3; ++t) {
    const LatticePoint lambda = {Rational(1 + static_cast<long>(rng() % 5), 7)};
    CHECK(check_nichols_on_vector(lattice, {alpha}, xx, lambda, 4) < 1e-6);
  }
}

TEST_CASE("trivial level at acceptance depth") {
  CHECK(trivial_level_relations(RootPreset::sl2, 3).all_ok);
}
