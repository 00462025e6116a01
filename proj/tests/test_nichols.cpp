#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <random>

#include "screenlab/nichols.hpp"

using namespace screenlab;
using nichols::WordCombination;

namespace {

// Brute-force oracle: builds the full rank^n x rank^n symmetrizer by acting
// with explicit braid letters c_{i,i+1} along an insertion-sort reduced word
// of each permutation. Independent of the library's block/Matsumoto path.
Eigen::MatrixXcd brute_symmetrizer(const BraidingMatrix& q, int n) {
  const int rank = q.rank();
  long dim = 1;
  for (int i = 0; i < n; ++i) dim *= rank;

  const auto index_of = [&](const std::vector<int>& w) {
    long idx = 0;
    for (int c : w) idx = idx * rank + c;
    return idx;
  };

  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // reduced word by bubble-sorting perm to the identity; applying the
    // recorded adjacent swaps in reverse rebuilds perm from the identity
    std::vector<int> word;
    std::vector<int> w = perm;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i + 1 < n; ++i) {
        if (w[i] > w[i + 1]) {
          std::swap(w[i], w[i + 1]);
          word.push_back(i);
          moved = true;
        }
      }
    }
    std::reverse(word.begin(), word.end());

    // act with c_{i,i+1} letters on every basis word
    std::vector<int> base(n, 0);
    for (long col = 0; col < dim; ++col) {
      std::vector<int> cur = base;
      Complex factor(1, 0);
      for (int letter : word) {
        factor *= q.q(cur[letter], cur[letter + 1]);
        std::swap(cur[letter], cur[letter + 1]);
      }
      total(index_of(cur), col) += factor;
      // next word
      int i = n - 1;
      while (i >= 0 && base[i] == rank - 1) base[i--] = 0;
      if (i >= 0) ++base[i];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

int brute_rank(const Eigen::MatrixXcd& m) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const double smax = svd.singularValues()(0);
  if (smax == 0) return 0;
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * smax) ++r;
  return r;
}

BraidingMatrix a2_braiding(const Rational& m) {
  // q_ii = q^2, q_12 = q_21 = q^{-1} with q = e^{i pi m}
  const Rational two_m = Rational(2) * m;
  return BraidingMatrix({{two_m, -m}, {-m, two_m}});
}

}  // namespace

TEST_CASE("symmetrizer matrix small cases") {
  const BraidingMatrix q1 = BraidingMatrix::rank1(Rational(2, 3));
  // n = 1: identity of size rank
  CHECK(nichols::symmetrizer_matrix(q1, 1).isApprox(Eigen::MatrixXcd::Identity(1, 1)));

  // rank 1, n = 2: the 1x1 matrix [1 + q]
  const auto m2 = nichols::symmetrizer_matrix(q1, 2);
  REQUIRE(m2.rows() == 1);
  CHECK(std::abs(m2(0, 0) - (Complex(1, 0) + phase_eval(Rational(2, 3)))) < 1e-14);

  // rank 2, all q = 1, n = 2: id + flip on the mixed words
  const BraidingMatrix triv({{Rational(0), Rational(0)}, {Rational(0), Rational(0)}});
  const auto mt = nichols::symmetrizer_matrix(triv, 2);
  // basis order: 00, 01, 10, 11
  Eigen::MatrixXcd expected(4, 4);
  expected << 2, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 2;
  CHECK(mt.isApprox(expected));
}

TEST_CASE("symmetrizer equals the brute-force braid action") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  for (int trial = 0; trial < 4; ++trial) {
    const int rank = (trial % 2) + 1;
    std::vector<std::vector<Rational>> m(rank, std::vector<Rational>(rank));
    for (int i = 0; i < rank; ++i)
      for (int j = i; j < rank; ++j) m[i][j] = m[j][i] = Rational(num(rng), den(rng));
    const BraidingMatrix q(m);
    for (int n = 1; n <= 4; ++n) {
      const auto lib = nichols::symmetrizer_matrix(q, n);
      const auto brute = brute_symmetrizer(q, n);
      CHECK((lib - brute).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("multiset blocks are exact") {
  const BraidingMatrix q = a2_braiding(Rational(1, 5));
  const auto m = nichols::symmetrizer_matrix(q, 3);
  // words with different color multisets never mix: entry (i, j) vanishes
  // exactly when the sorted digit strings differ
  const int rank = 2, n = 3;
  const auto digits = [&](int idx) {
    std::vector<int> w(n);
    for (int i = n - 1; i >= 0; --i) {
      w[i] = idx % rank;
      idx /= rank;
    }
    std::sort(w.begin(), w.end());
    return w;
  };
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (digits(i) != digits(j)) CHECK(m(i, j) == Complex(0, 0));
}

TEST_CASE("rank-1 kernels at roots of unity") {
  for (long ell : {2L, 3L, 5L}) {
    const BraidingMatrix q = BraidingMatrix::rank1(Rational(2, ell));
    for (int n = 1; n < ell; ++n) CHECK(nichols::kernel_dimension(q, n) == 0);
    CHECK(nichols::kernel_dimension(q, static_cast<int>(ell)) == 1);
  }
  // n = 1 never has a kernel
  CHECK(nichols::kernel_dimension(BraidingMatrix::rank1(Rational(7, 9)), 1) == 0);
}

TEST_CASE("rank-1 graded dimension tracks [n]_q!") {
  const BraidingMatrix q = BraidingMatrix::rank1(Rational(2, 5));
  for (int n = 1; n <= 7; ++n) {
    Complex fact(1, 0);
    for (int k = 1; k <= n; ++k) {
      Complex num = Complex(1, 0) - phase_eval(Rational(2 * k, 5));
      Complex den = Complex(1, 0) - phase_eval(Rational(2, 5));
      fact *= num / den;
    }
    const int dim = nichols::graded_dimension(q, n);
    CHECK(dim == ((std::abs(fact) > 1e-9) ? 1 : 0));
  }
}

TEST_CASE("hilbert series") {
  CHECK(nichols::hilbert_series(BraidingMatrix::rank1(Rational(2, 3)), 5) ==
        std::vector<int>{1, 1, 1, 0, 0, 0});
  // far from a root of unity: all ones
  CHECK(nichols::hilbert_series(BraidingMatrix::rank1(Rational(1, 9973)), 6) ==
        std::vector<int>{1, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("super sl(2|1) braidings at q = i have total dimension 8") {
  // q = i = e^{i pi/2}: q' has q11 = q22 = -1, q12 = q21 = q^{-1};
  // q'' replaces q22 by q^2
  const Rational qinv(-1, 2);
  const BraidingMatrix qp({{Rational(1), qinv}, {qinv, Rational(1)}});
  const BraidingMatrix qpp({{Rational(1), qinv}, {qinv, Rational(2) * Rational(1, 2)}});
  for (const auto& q : {qp, qpp}) {
    const auto dims = nichols::hilbert_series(q, 8);
    int total = 0;
    for (int d : dims) total += d;
    CHECK(total == 8);
    CHECK(dims[7] == 0);
    CHECK(dims[8] == 0);
    // per-degree dimensions against the brute-force rank oracle
    for (int n = 1; n <= 5; ++n)
      CHECK(dims[n] == brute_rank(brute_symmetrizer(q, n)));
  }
}

TEST_CASE("A2 quantum Serre relation sits in the degree-3 kernel") {
  const Rational m(1, 23);  // generic q
  const BraidingMatrix q = a2_braiding(m);
  const int kd = nichols::kernel_dimension(q, 3);
  CHECK(kd == 8 - brute_rank(brute_symmetrizer(q, 3)));
  CHECK(kd == 2);  // the two quantum Serre relations

  // x1 x1 x2 - (q11 q12 + q12) x1 x2 x1 + q11 q12^2 x2 x1 x1
  const Complex q11 = phase_eval(Rational(2) * m);
  const Complex q12 = phase_eval(-m);
  WordCombination serre;
  serre.terms[{0, 0, 1}] = Complex(1, 0);
  serre.terms[{0, 1, 0}] = -(q11 * q12 + q12);
  serre.terms[{1, 0, 0}] = q11 * q12 * q12;
  CHECK(nichols::is_relation(q, serre));

  // perturbing a coefficient breaks it
  serre.terms[{0, 1, 0}] += Complex(0.05, 0);
  CHECK_FALSE(nichols::is_relation(q, serre));
}

TEST_CASE("is_relation on rank 1") {
  WordCombination xx;
  xx.terms[{0, 0}] = Complex(1, 0);
  CHECK(nichols::is_relation(BraidingMatrix::rank1(Rational(1)), xx));  // q = -1
  CHECK_FALSE(nichols::is_relation(BraidingMatrix::rank1(Rational(1, 3)), xx));
}

TEST_CASE("trivial braiding gives symmetric-algebra ranks") {
  for (int rank = 1; rank <= 3; ++rank) {
    std::vector<std::vector<Rational>> m(rank, std::vector<Rational>(rank, Rational(0)));
    const BraidingMatrix q(m);
    for (int n = 1; n <= 5; ++n) {
      const long expected = combinat::choose(n + rank - 1, rank - 1);  // multisets
      CHECK(nichols::graded_dimension(q, n) == expected);
    }
  }
}

TEST_CASE("kernel dimension is invariant under color relabeling") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::vector<Rational>> m(2, std::vector<Rational>(2));
    m[0][0] = Rational(num(rng), den(rng));
    m[1][1] = Rational(num(rng), den(rng));
    m[0][1] = m[1][0] = Rational(num(rng), den(rng));
    const BraidingMatrix q(m);
    const BraidingMatrix swapped({{m[1][1], m[0][1]}, {m[0][1], m[0][0]}});
    for (int n = 1; n <= 4; ++n)
      CHECK(nichols::kernel_dimension(q, n) == nichols::kernel_dimension(swapped, n));
  }
}

TEST_CASE("size caps") {
  const BraidingMatrix q = BraidingMatrix::rank1(Rational(1, 3));
  CHECK_THROWS_AS(nichols::symmetrizer_matrix(q, 11), SizeLimitError);
  nichols::Limits tiny;
  tiny.column_cap = 4;
  const BraidingMatrix q2({{Rational(0), Rational(0)}, {Rational(0), Rational(0)}});
  CHECK_THROWS_AS(nichols::symmetrizer_matrix(q2, 3, tiny), SizeLimitError);
}
