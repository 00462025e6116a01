#ifndef SCREENLAB_COMBINAT_HPP
#define SCREENLAB_COMBINAT_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "screenlab/braiding.hpp"
#include "screenlab/rational.hpp"

namespace screenlab::combinat {

/// Permutation of {0, ..., n-1} stored by its image sequence.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// The order-reversing permutation i -> n-1-i.
  static Permutation reversal(int n);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const;
  /// Composition acting left-to-right as functions: (*this after other),
  /// i.e. result(i) = (*this)(other(i)).
  Permutation compose(const Permutation& other) const;

  bool is_identity() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

 private:
  std::vector<int> img_;
};

/// All pairs (i, j) with i < j and sigma(i) > sigma(j). The count equals the
/// Coxeter length of sigma.
std::vector<std::pair<int, int>> inversions(const Permutation& sigma);

long length(const Permutation& sigma);

/// Calls fn for every element of S_n in lexicographic order of images.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn);

/// Braiding factor q(sigma) of a colored permutation, computed along a
/// reduced word by the inductive Matsumoto rule
///   q(id) = 1,   q((k,k+1) sigma) = q_{f(sigma^{-1}(k)), f(sigma^{-1}(k+1))} * q(sigma)
/// whenever the length increases. The reduced word is found by repeatedly
/// lifting the smallest out-of-order value pair, which is deterministic;
/// the result is reduced-word independent.
PhaseExponent braiding_factor(const BraidingMatrix& q, const Coloring& f,
                              const Permutation& sigma);

/// The paper's variant of (k, n-k)-shuffles: eta increasing on the first k
/// positions and decreasing on the last n-k. Lexicographic in the image
/// subset of the first block; count is C(n, k).
std::vector<Permutation> shuffles(int k, int n);

/// Full table sigma -> q(sigma) over S_n. Throws FactorialLimitError for
/// n > cap.
std::map<Permutation, PhaseExponent> quantum_symmetrizer_coefficients(
    const BraidingMatrix& q, const Coloring& f, int cap = 10);

/// Binomial coefficient C(n, k) for small integers.
long choose(int n, int k);

}  // namespace screenlab::combinat

#endif
