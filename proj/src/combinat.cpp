#include "screenlab/combinat.hpp"

#include <algorithm>
#include <numeric>

#include "screenlab/errors.hpp"

namespace screenlab::combinat {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
      throw PreconditionError("Permutation: images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::reversal(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = n - 1 - i;
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < static_cast<int>(img_.size()); ++i) inv[img_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  std::vector<int> img(img_.size());
  for (int i = 0; i < static_cast<int>(img_.size()); ++i) img[i] = img_[other(i)];
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < static_cast<int>(img_.size()); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::vector<std::pair<int, int>> inversions(const Permutation& sigma) {
  std::vector<std::pair<int, int>> out;
  const int n = sigma.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sigma(i) > sigma(j)) out.emplace_back(i, j);
  return out;
}

long length(const Permutation& sigma) {
  long count = 0;
  const int n = sigma.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sigma(i) > sigma(j)) ++count;
  return count;
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  do {
    fn(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
}

PhaseExponent braiding_factor(const BraidingMatrix& q, const Coloring& f,
                              const Permutation& sigma) {
  if (static_cast<int>(f.size()) != sigma.size())
    throw PreconditionError("braiding_factor: coloring length != permutation size");
  for (int c : f)
    if (c < 0 || c >= q.rank())
      throw PreconditionError("braiding_factor: color out of range");

  // Peel sigma down to the identity: while some adjacent value pair (k, k+1)
  // sits out of order, sigma = (k,k+1) sigma_prev with l(sigma_prev) one
  // less, contributing q_{f(sigma_prev^{-1}(k)), f(sigma_prev^{-1}(k+1))}.
  std::vector<int> pos(sigma.size());  // pos[v] = position of value v
  for (int i = 0; i < sigma.size(); ++i) pos[sigma(i)] = i;

  Rational exponent(0);
  const int n = sigma.size();
  bool progress = true;
  while (progress) {
    progress = false;
    for (int k = 0; k + 1 < n; ++k) {
      if (pos[k] > pos[k + 1]) {
        // In sigma_prev the value k sits where k+1 sits now and vice versa.
        exponent += q.exponent(f[pos[k + 1]], f[pos[k]]);
        std::swap(pos[k], pos[k + 1]);
        progress = true;
        break;
      }
    }
  }
  return PhaseExponent(exponent);
}

std::vector<Permutation> shuffles(int k, int n) {
  if (k < 0 || k > n) throw PreconditionError("shuffles: need 0 <= k <= n");
  std::vector<Permutation> out;
  // Enumerate k-subsets of {0..n-1} in lexicographic order; the subset is
  // the image of the first block (ascending), its complement the image of
  // the second block (descending).
  std::vector<int> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  while (true) {
    std::vector<int> img(n);
    std::vector<bool> used(n, false);
    for (int i = 0; i < k; ++i) {
      img[i] = subset[i];
      used[subset[i]] = true;
    }
    int fill = n - 1;
    for (int i = k; i < n; ++i) {
      while (used[fill]) --fill;
      img[i] = fill;
      used[fill] = true;
    }
    out.emplace_back(std::move(img));
    // next k-subset
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return out;
}

std::map<Permutation, PhaseExponent> quantum_symmetrizer_coefficients(
    const BraidingMatrix& q, const Coloring& f, int cap) {
  const int n = static_cast<int>(f.size());
  if (n > cap)
    throw FactorialLimitError("quantum_symmetrizer_coefficients: n exceeds cap");
  std::map<Permutation, PhaseExponent> table;
  for_each_permutation(n, [&](const Permutation& sigma) {
    table.emplace(sigma, braiding_factor(q, f, sigma));
  });
  return table;
}

long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long c = 1;
  for (int t = 0; t < k; ++t) c = c * (n - t) / (t + 1);
  return c;
}

}  // namespace screenlab::combinat
