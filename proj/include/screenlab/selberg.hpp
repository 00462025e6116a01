#ifndef SCREENLAB_SELBERG_HPP
#define SCREENLAB_SELBERG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "screenlab/rational.hpp"
#include "screenlab/report.hpp"

namespace screenlab::selberg {

/// Parameters of the generalized n-fold Selberg integral
///   int_{1 >= z_1 > ... > z_n >= 0} prod z_i^{m_i} prod (1-z_i)^{mbar_i}
///                                   prod_{i<j} (z_i - z_j)^{m_ij}.
struct SelbergParams {
  std::vector<Rational> m;                     // m_i
  std::vector<Rational> mbar;                  // mbar_i, same length
  std::map<std::pair<int, int>, Rational> mm;  // m_ij, i < j, 0-based

  int n() const { return static_cast<int>(m.size()); }
  const Rational& pair(int i, int j) const;

  static SelbergParams uniform(int n, const Rational& m_i, const Rational& mbar_i,
                               const Rational& m_ij);
  static SelbergParams n2(const Rational& m1, const Rational& m2, const Rational& mbar,
                          const Rational& m12);

  void validate() const;
};

struct ConvergenceReport {
  bool convergent = true;
  std::vector<std::string> violations;  // human-readable, one per failed inequality
};

/// Checks the three families of strict convergence inequalities exactly on
/// the rationals and reports each violated one.
ConvergenceReport selberg_convergent(const SelbergParams& p);

struct QuadratureOptions {
  double tol = 1e-10;
  int max_level = 8;        // tanh-sinh refinement cap (nodes/axis ~ 13*2^level)
  std::uint64_t seed = 1;   // Monte Carlo stream seed
  std::int64_t sample_cap = 10'000'000;
  double mc_rel_tol = 1e-3;
  bool throw_on_budget = true;
};

/// The integral itself. Deterministic iterated tanh-sinh quadrature (after
/// the nested substitution z_j = z_{j-1} u_j) for n <= 3; stratified
/// importance-sampling Monte Carlo for 4 <= n <= 6. n = 0 returns 1.
EvalReport selberg(const SelbergParams& p, const QuadratureOptions& opt = {});

/// Sel(m1, m2; 0, m12) = B(m2+1, m12+1) / (2 + m1 + m2 + m12).
Complex selberg_closed_n2(const Rational& m1, const Rational& m2, const Rational& m12);

/// The classical k-fold Selberg product formula for m_i = a-1, mbar_i = b-1,
/// m_ij = 2c, divided by k! for the ordered simplex.
Complex selberg_product_formula(const Rational& a, const Rational& b, const Rational& c,
                                int k);

/// Integrates out z_1 from an all-mbar-zero integral: returns the prefactor
/// 1/(n + sum m_i + sum m_ij) and the (n-1)-fold parameters with the m_{1i}
/// moved into the mbar slots.
std::pair<Complex, SelbergParams> selberg_reduce_first(const SelbergParams& p);

}  // namespace screenlab::selberg

#endif
