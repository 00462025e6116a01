#ifndef SCREENLAB_BRAIDING_HPP
#define SCREENLAB_BRAIDING_HPP

#include <vector>

#include "screenlab/numeric.hpp"
#include "screenlab/rational.hpp"

namespace screenlab {

/// Diagonal braiding matrix q_{ij} = e^{i*pi*m_{ij}}, stored by the exact
/// phase exponents m_{ij} reduced mod 2 into [0, 2).
class BraidingMatrix {
 public:
  BraidingMatrix() = default;
  explicit BraidingMatrix(std::vector<std::vector<Rational>> m) : m_(std::move(m)) {
    for (auto& row : m_)
      for (auto& e : row) e = e.mod2();
  }

  static BraidingMatrix rank1(const Rational& m11) { return BraidingMatrix({{m11}}); }

  int rank() const { return static_cast<int>(m_.size()); }
  const Rational& exponent(int i, int j) const { return m_[i][j]; }
  PhaseExponent phase(int i, int j) const { return PhaseExponent(m_[i][j]); }
  Complex q(int i, int j) const { return phase_eval(m_[i][j]); }

 private:
  std::vector<std::vector<Rational>> m_;
};

/// Coloring of tensor positions by generator indices, 0-based.
using Coloring = std::vector<int>;

}  // namespace screenlab

#endif
