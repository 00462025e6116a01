#ifndef SCREENLAB_MONODROMY_HPP
#define SCREENLAB_MONODROMY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "screenlab/rational.hpp"
#include "screenlab/report.hpp"

namespace screenlab::monodromy {

/// Argument record of the quantum monodromy numbers: exponents m_i and
/// pairwise exponents m_{ij} (stored for i < j), all exact rationals,
/// plus optional per-variable radii hbar_i.
struct MonodromyParams {
  std::vector<Rational> m;                          // m_i, size n
  std::map<std::pair<int, int>, Rational> mm;       // m_{ij}, i < j, 0-based
  std::optional<std::vector<double>> hbar;          // radii, all > 0

  int n() const { return static_cast<int>(m.size()); }

  const Rational& pair(int i, int j) const;  // symmetric lookup, i != j

  /// Convenience constructor for n = 2.
  static MonodromyParams n2(const Rational& m1, const Rational& m2, const Rational& m12);

  /// Params with entries permuted by sigma^{-1}: m'_i = m_{sigma^{-1}(i)},
  /// m'_{ij} = m_{sigma^{-1}(i) sigma^{-1}(j)}.
  MonodromyParams permuted_by_inverse(const std::vector<int>& sigma_images) const;

  void validate() const;
};

/// Formal residue Res_hbar(z^m): 0 for integral m != -1, 1 for m = -1, and
/// hbar^{m+1} (e^{2 pi i (m+1)} - 1) / (2 pi i (m+1)) otherwise. Integrality
/// is decided exactly on the rational.
Complex res(const Rational& m, double hbar = 1.0);

/// Fracturedness: m_i + sum_{i<j} m_ij not integral, for every i.
bool fractured(const MonodromyParams& p);

/// Sufficient condition for conditional convergence of the F- series:
/// sum_{i<j in J} m_ij > -|J| for every subset J. Returns the first
/// violated subset, if any.
std::optional<std::vector<int>> convergence_violation(const MonodromyParams& p);

struct SeriesOptions {
  double tol = 1e-8;
  int shell_cap = 400;        // used for n = 2; see shell_cap_for()
  int quiet_shells = 4;       // consecutive quiet shells demanded
  bool throw_on_cap = true;   // ShellCapError vs converged=false report
};

int default_shell_cap(int n);  // 400 for n <= 2, 120 beyond

/// Quantum monodromy number F- as a shell-summed series over
/// (k_ij) in N_0^{C(n,2)}, shells by total degree in ascending order. Each
/// residue factor is evaluated per-factor by res(), so integral-exponent
/// degeneracies never hit the fractured closed form.
EvalReport f_minus(const MonodromyParams& p, const SeriesOptions& opt = {});

/// Closed forms of the (partly) integral n = 2 cases; requires m_b or
/// m_a + m_ab integral, otherwise PreconditionError.
Complex f_minus_integral_case(const Rational& m_a, const Rational& m_b, const Rational& m_ab);

/// F+ for n = 2 by its own expansion around t = z - w:
/// sum_k Res(t^{m_ab+k}) Res(w^{m_b+m_a-k}) C(m_a, k).
EvalReport f_plus_n2(const Rational& m_a, const Rational& m_b, const Rational& m_ab,
                     const SeriesOptions& opt = {});

/// The hbar-regularized series F^{hbar_1..hbar_n}; per-factor weight
/// hbar_i^{E_i} (e^{2 pi i (E_i+1)} - 1)/(2 pi i (E_i+1)) as in the torus
/// parametrization, so equal radii give hbar^{sum m_i + sum m_ij} * F-.
/// Strictly decreasing radii guarantee absolute convergence; equal radii
/// are summed conditionally.
EvalReport f_hbar(const MonodromyParams& p, const SeriesOptions& opt = {});

}  // namespace screenlab::monodromy

#endif
