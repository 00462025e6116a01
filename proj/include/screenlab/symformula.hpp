#ifndef SCREENLAB_SYMFORMULA_HPP
#define SCREENLAB_SYMFORMULA_HPP

#include <map>
#include <optional>
#include <vector>

#include "screenlab/combinat.hpp"
#include "screenlab/monodromy.hpp"
#include "screenlab/selberg.hpp"

namespace screenlab::symformula {

/// Smallness of the m_ij: sum_{i<j in J} m_ij > -(|J| - 1) for every index
/// subset J. Returns the first violated subset, if any.
std::optional<std::vector<int>> smallness_violation(const monodromy::MonodromyParams& p);

struct FtildeOptions {
  double tol = 1e-8;                  // target for the whole combination
  selberg::QuadratureOptions quad{};  // per-piece quadrature settings
  int jobs = 1;
};

/// Reduced quantum monodromy number: the alternating lift-phase/shuffle
/// combination of 2^n generalized Selberg integrals,
///   (2 pi i)^{-n} sum_k (-1)^k (prod_{i>k} e^{2 pi i m_i})
///       sum_{eta} (prod_{inversions} e^{i pi m_ij}) Sel(eta-permuted params).
/// Each Selberg piece is evaluated to tol/2^n; component error estimates add.
EvalReport f_tilde(const monodromy::MonodromyParams& p, const FtildeOptions& opt = {});

/// n = 2 Beta closed forms (independent algebraic route through Euler Beta).
Complex f_tilde_n2_closed(const Rational& m1, const Rational& m2, const Rational& m12);
Complex f_minus_n2_closed(const Rational& m1, const Rational& m2, const Rational& m12);

struct SymmetrizerCheckOptions {
  monodromy::SeriesOptions series{};
  FtildeOptions ftilde{};
};

struct SymmetrizerCheckReport {
  Complex lhs;       // series F-
  Complex rhs;       // quantum symmetrizer of F~-
  double residual;   // |lhs - rhs|
  double lhs_error;
  double rhs_error;
  std::map<combinat::Permutation, Complex> per_sigma;  // q(sigma) * F~-(sigma...)
};

/// Numerical check of the Quantum Symmetrizer Formula
///   F- = sum_sigma q(sigma) F~-(permuted params),
/// with q(sigma) the braiding factor for q_ij = e^{i pi m_ij} and positions
/// colored by themselves.
SymmetrizerCheckReport verify_symmetrizer(const monodromy::MonodromyParams& p,
                                          const SymmetrizerCheckOptions& opt = {});

struct TorusOptions {
  double tol = 1e-8;
  int max_nodes_per_axis = 2048;
  bool throw_on_budget = true;
};

/// Direct quadrature of the lifted-torus parametrization of F^{hbar_1,hbar_2}
/// (n <= 2, strictly decreasing radii); equals f_hbar at the same radii.
EvalReport torus_integral(const monodromy::MonodromyParams& p, const TorusOptions& opt = {});

/// The Selberg-free coefficient of the reduced-number definition for equal
/// m_i and equal m_ij; vanishes whenever 2 m_i + (n-1) m_ij is an even
/// integer (perfect-matching cancellation).
Complex vanishing_coefficient(int n, const Rational& m_i, const Rational& m_ij);

/// Same alternating shuffle sum for an arbitrary complex q and E = e^{2 pi i m_i}:
///   (2 pi i)^{-n} sum_k (-1)^k E^{n-k} sum_{eta in S_{k, bar(n-k)}} q^{l(eta)}.
Complex vanishing_sum_generic(int n, const Complex& q, const Complex& e_2pi_mi);

}  // namespace screenlab::symformula

#endif
