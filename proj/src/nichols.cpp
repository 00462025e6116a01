#include "screenlab/nichols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "screenlab/errors.hpp"

namespace screenlab::nichols {

namespace {

using combinat::Permutation;

std::vector<Coloring> all_words(int rank, int n) {
  std::vector<Coloring> words;
  Coloring w(n, 0);
  while (true) {
    words.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[i] == rank - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  if (n == 0) words.assign(1, Coloring{});
  return words;
}

// Words grouped by color multiset; each group keeps the word list.
std::vector<std::vector<Coloring>> multiset_blocks(int rank, int n) {
  std::map<Coloring, std::vector<Coloring>> groups;
  for (auto& w : all_words(rank, n)) {
    Coloring key = w;
    std::sort(key.begin(), key.end());
    groups[key].push_back(w);
  }
  std::vector<std::vector<Coloring>> blocks;
  blocks.reserve(groups.size());
  for (auto& [key, words] : groups) blocks.push_back(std::move(words));
  return blocks;
}

// All braiding phases live on the grid (1/D) Z mod 2 for the common
// denominator D of the matrix entries, so the factor of a colored
// permutation is a plain integer sum over inversions into a phase table.
struct PhaseGrid {
  long d = 1;                                 // common denominator
  std::vector<std::vector<long>> numerator;   // m_ij = numerator/d mod 2
  std::vector<Complex> table;                 // e^{i pi t/d}, t = 0..2d-1

  static PhaseGrid of(const BraidingMatrix& q) {
    PhaseGrid grid;
    const int r = q.rank();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (!q.exponent(i, j).den().fits_slong_p())
          throw SizeLimitError("braiding denominators out of range");
        grid.d = std::lcm(grid.d, q.exponent(i, j).den().get_si());
      }
    grid.numerator.assign(r, std::vector<long>(r, 0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const Rational scaled = q.exponent(i, j) * Rational(grid.d);
        grid.numerator[i][j] = scaled.to_long();  // in [0, 2d)
      }
    grid.table.resize(2 * grid.d);
    for (long t = 0; t < 2 * grid.d; ++t)
      grid.table[t] = phase_eval(Rational(t, grid.d));
    return grid;
  }

  Complex factor(const std::vector<std::pair<int, int>>& inversion_pairs,
                 const Coloring& f) const {
    long sum = 0;
    for (const auto& [i, j] : inversion_pairs) sum += numerator[f[i]][f[j]];
    return table[sum % (2 * d)];
  }
};

// Symmetrizer block on one multiset class: columns indexed by input word,
// rows by output word, both in the block's own word order.
Eigen::MatrixXcd block_matrix(const PhaseGrid& grid, const std::vector<Coloring>& words) {
  const int n = words.empty() ? 0 : static_cast<int>(words.front().size());
  std::map<Coloring, int> index;
  for (int i = 0; i < static_cast<int>(words.size()); ++i) index[words[i]] = i;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(words.size(), words.size());
  combinat::for_each_permutation(n, [&](const Permutation& sigma) {
    const Permutation sigma_inv = sigma.inverse();
    const auto inversion_pairs = combinat::inversions(sigma);
    for (int col = 0; col < static_cast<int>(words.size()); ++col) {
      const Coloring& f = words[col];
      Coloring g(n);
      for (int i = 0; i < n; ++i) g[i] = f[sigma_inv(i)];
      m(index.at(g), col) += grid.factor(inversion_pairs, f);
    }
  });
  return m;
}

// Rank of the whole degree-n symmetrizer, block by block. The threshold is
// relative to the largest singular value across all blocks, so blocks that
// vanish identically (e.g. [n]_q! = 0 in rank 1) do not self-normalize to
// full rank.
struct DegreeRank {
  int columns = 0;
  int rank = 0;
};

DegreeRank degree_rank(const BraidingMatrix& q, int n, double eps) {
  DegreeRank out;
  std::vector<Eigen::VectorXd> spectra;
  double smax = 0;
  const PhaseGrid grid = PhaseGrid::of(q);
  for (const auto& block : multiset_blocks(q.rank(), n)) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block_matrix(grid, block));
    spectra.push_back(svd.singularValues());
    out.columns += static_cast<int>(block.size());
    if (spectra.back().size() > 0) smax = std::max(smax, spectra.back()(0));
  }
  // Entries of the symmetrizer are sums of unit-modulus phases, so a unit
  // scale floor keeps the threshold meaningful when the whole degree
  // vanishes (smax ~ machine noise), e.g. [n]_q! = 0 in rank 1.
  const double threshold = eps * std::max(smax, 1.0);
  for (const auto& sv : spectra) {
    for (int i = 0; i < sv.size(); ++i) {
      const double s = sv(i);
      if (s > threshold / 10.0 && s < threshold * 10.0)
        throw IllConditionedError(
            "kernel rank: singular value within a decade of the threshold");
      if (s >= threshold) ++out.rank;
    }
  }
  return out;
}

void check_caps(const BraidingMatrix& q, int n, const Limits& limits) {
  if (n < 0) throw PreconditionError("nichols: negative degree");
  if (n > limits.n_cap) throw SizeLimitError("nichols: degree exceeds n cap");
  double size = 1;
  for (int i = 0; i < n; ++i) size *= q.rank();
  if (size > limits.column_cap)
    throw SizeLimitError("nichols: rank^n exceeds the column cap");
}

}  // namespace

double WordCombination::norm() const {
  double s = 0;
  for (const auto& [w, c] : terms) s += std::norm(c);
  return std::sqrt(s);
}

void WordCombination::normalize() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == Complex(0, 0))
      it = terms.erase(it);
    else
      ++it;
  }
  if (terms.empty()) return;
  const auto len = terms.begin()->first.size();
  for (const auto& [w, c] : terms)
    if (w.size() != len)
      throw PreconditionError("WordCombination: words of mixed length");
}

Eigen::MatrixXcd symmetrizer_matrix(const BraidingMatrix& q, int n, const Limits& limits) {
  check_caps(q, n, limits);
  const auto words = all_words(q.rank(), n);
  std::map<Coloring, int> index;
  for (int i = 0; i < static_cast<int>(words.size()); ++i) index[words[i]] = i;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(words.size(), words.size());
  const PhaseGrid grid = PhaseGrid::of(q);
  for (const auto& block : multiset_blocks(q.rank(), n)) {
    const Eigen::MatrixXcd bm = block_matrix(grid, block);
    for (int c = 0; c < static_cast<int>(block.size()); ++c)
      for (int r = 0; r < static_cast<int>(block.size()); ++r)
        m(index.at(block[r]), index.at(block[c])) = bm(r, c);
  }
  return m;
}

int kernel_dimension(const BraidingMatrix& q, int n, const Limits& limits) {
  check_caps(q, n, limits);
  if (n == 0) return 0;
  const DegreeRank dr = degree_rank(q, n, limits.svd_epsilon);
  return dr.columns - dr.rank;
}

int graded_dimension(const BraidingMatrix& q, int n, const Limits& limits) {
  check_caps(q, n, limits);
  if (n == 0) return 1;
  return degree_rank(q, n, limits.svd_epsilon).rank;
}

std::vector<int> hilbert_series(const BraidingMatrix& q, int n_max, const Limits& limits) {
  std::vector<int> dims;
  dims.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) dims.push_back(graded_dimension(q, n, limits));
  return dims;
}

WordCombination apply_symmetrizer(const BraidingMatrix& q, const WordCombination& w,
                                  const Limits& limits) {
  WordCombination out;
  const int n = w.degree();
  check_caps(q, n, limits);
  combinat::for_each_permutation(n, [&](const Permutation& sigma) {
    const Permutation sigma_inv = sigma.inverse();
    for (const auto& [f, coeff] : w.terms) {
      Coloring g(n);
      for (int i = 0; i < n; ++i) g[i] = f[sigma_inv(i)];
      out.terms[g] += coeff * phase_eval(combinat::braiding_factor(q, f, sigma));
    }
  });
  out.normalize();
  return out;
}

bool is_relation(const BraidingMatrix& q, const WordCombination& w, double tol,
                 const Limits& limits) {
  const double wn = w.norm();
  if (wn == 0.0) return true;
  return apply_symmetrizer(q, w, limits).norm() <= tol * wn;
}

}  // namespace screenlab::nichols
