#ifndef SCREENLAB_NICHOLS_HPP
#define SCREENLAB_NICHOLS_HPP

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "screenlab/braiding.hpp"
#include "screenlab/combinat.hpp"

namespace screenlab::nichols {

/// Formal complex-linear combination of degree-n words in the generators,
/// keyed by colorings.
struct WordCombination {
  std::map<Coloring, Complex> terms;

  int degree() const { return terms.empty() ? 0 : static_cast<int>(terms.begin()->first.size()); }
  double norm() const;

  /// Drops exact-zero coefficients and checks all words share one length.
  void normalize();
};

struct Limits {
  int n_cap = 10;           // full S_n enumeration cap
  int column_cap = 4096;    // dense matrix size cap
  double svd_epsilon = 1e-10;
};

/// Matrix of the quantum symmetrizer on the word basis of M^{tensor n}
/// (lexicographic word order). sigma maps the word (f(1)...f(n)) to
/// (f(sigma^{-1}(1))...f(sigma^{-1}(n))) weighted by the braiding factor of
/// the colored word; the result is block-diagonal over color multisets.
Eigen::MatrixXcd symmetrizer_matrix(const BraidingMatrix& q, int n,
                                    const Limits& limits = {});

/// dim ker of the symmetrizer in degree n, via singular-value rank with a
/// relative threshold. Throws IllConditionedError when singular values
/// cluster within a decade of the threshold.
int kernel_dimension(const BraidingMatrix& q, int n, const Limits& limits = {});

/// rank of the symmetrizer in degree n = dim B(M)_n.
int graded_dimension(const BraidingMatrix& q, int n, const Limits& limits = {});

/// Dimensions of the Nichols algebra B(M) in degrees 0..n_max.
std::vector<int> hilbert_series(const BraidingMatrix& q, int n_max,
                                const Limits& limits = {});

/// Applies the symmetrizer to a word combination.
WordCombination apply_symmetrizer(const BraidingMatrix& q, const WordCombination& w,
                                  const Limits& limits = {});

/// True iff ||Sha(w)|| <= tol * ||w||.
bool is_relation(const BraidingMatrix& q, const WordCombination& w, double tol = 1e-9,
                 const Limits& limits = {});

}  // namespace screenlab::nichols

#endif
