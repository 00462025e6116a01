#ifndef SCREENLAB_VOA_HPP
#define SCREENLAB_VOA_HPP

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "screenlab/errors.hpp"
#include "screenlab/monodromy.hpp"
#include "screenlab/nichols.hpp"
#include "screenlab/numeric.hpp"
#include "screenlab/rational.hpp"

namespace screenlab::voa {

// ------------------------------------------------------------------ lattice

/// Coordinates of a lattice point (or rescaled weight) in the fixed basis.
using LatticePoint = std::vector<Rational>;

LatticePoint lattice_add(const LatticePoint& a, const LatticePoint& b);
LatticePoint lattice_negate(const LatticePoint& a);
LatticePoint lattice_zero(int rank);
LatticePoint lattice_basis(int rank, int i);
LatticePoint lattice_scale(const Rational& c, const LatticePoint& a);

/// Lattice with exact rational Gram matrix; all inner products live in
/// (1/N) Z for the common denominator N.
class Lattice {
 public:
  explicit Lattice(std::vector<std::vector<Rational>> gram);

  int rank() const { return static_cast<int>(gram_.size()); }
  const Rational& gram(int i, int j) const { return gram_[i][j]; }
  long common_denominator() const { return n_; }

  Rational inner(const LatticePoint& a, const LatticePoint& b) const;
  Rational norm(const LatticePoint& a) const { return inner(a, a); }

  static Lattice rank1(const Rational& norm) { return Lattice({{norm}}); }
  static Lattice sl2() { return Lattice({{Rational(2)}}); }
  static Lattice sl3() {
    return Lattice({{Rational(2), Rational(-1)}, {Rational(-1), Rational(2)}});
  }

 private:
  std::vector<std::vector<Rational>> gram_;
  long n_;
};

// ------------------------------------------------------- differential part

/// Commutative monomial in the generators d^k phi_i (k >= 1, basis
/// direction i), stored as sorted (direction, order, multiplicity) entries.
/// The N_0-degree is the total derivative order sum(order * mult); the
/// operator d raises it by exactly 1 on every element.
class DiffMonomial {
 public:
  struct Entry {
    int dir;
    int order;
    int mult;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };

  DiffMonomial() = default;

  static DiffMonomial one() { return DiffMonomial(); }
  static DiffMonomial generator(int dir, int order, int mult = 1);

  bool is_one() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  int degree() const {
    int d = 0;
    for (const auto& e : entries_) d += e.order * e.mult;
    return d;
  }

  DiffMonomial times(const DiffMonomial& other) const;
  /// Multiplicity adjusted by delta at (dir, order); removes zero entries.
  DiffMonomial with_multiplicity_delta(int dir, int order, int delta) const;
  int multiplicity(int dir, int order) const;

  friend auto operator<=>(const DiffMonomial&, const DiffMonomial&) = default;

 private:
  std::vector<Entry> entries_;  // sorted by (dir, order)
};

// --------------------------------------------------------------- scalars

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Complex> {
  static Complex from_rational(const Rational& r) { return Complex(r.to_double(), 0.0); }
  static bool is_zero(const Complex& v) { return v == Complex(0.0, 0.0); }
  static double abs(const Complex& v) { return std::abs(v); }
};

template <>
struct ScalarOps<Rational> {
  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static double abs(const Rational& v) { return std::fabs(v.to_double()); }
};

inline constexpr int kUnbounded = INT_MAX;

// ----------------------------------------------------------- VOA elements

/// Finite linear combination of (differential monomial, lattice point)
/// pairs with coefficients in S (complex doubles or exact rationals). Terms
/// above the truncation degree are dropped on insertion.
template <class S>
class VoaElement {
 public:
  using Key = std::pair<DiffMonomial, LatticePoint>;
  using Ops = ScalarOps<S>;

  explicit VoaElement(int rank, int truncation = kUnbounded)
      : rank_(rank), truncation_(truncation) {}

  int rank() const { return rank_; }
  int truncation() const { return truncation_; }
  const std::map<Key, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const DiffMonomial& mono, const LatticePoint& point, const S& coeff) {
    if (Ops::is_zero(coeff)) return;
    if (truncation_ != kUnbounded && mono.degree() > truncation_) return;
    if (static_cast<int>(point.size()) != rank_)
      throw PreconditionError("VoaElement: lattice point of wrong rank");
    auto [it, inserted] = terms_.try_emplace({mono, point}, coeff);
    if (!inserted) {
      it->second += coeff;
      if (Ops::is_zero(it->second)) terms_.erase(it);
    }
  }

  VoaElement& operator+=(const VoaElement& other) {
    for (const auto& [key, c] : other.terms_) add(key.first, key.second, c);
    return *this;
  }

  VoaElement scaled(const S& factor) const {
    VoaElement out(rank_, truncation_);
    if (Ops::is_zero(factor)) return out;
    for (const auto& [key, c] : terms_) out.add(key.first, key.second, c * factor);
    return out;
  }

  VoaElement operator-(const VoaElement& other) const {
    VoaElement out = *this;
    out += other.scaled(ScalarOps<S>::from_rational(Rational(-1)));
    return out;
  }

  /// Hopf algebra product: monomials multiply, lattice points add.
  VoaElement times(const VoaElement& other) const {
    VoaElement out(rank_, std::min(truncation_, other.truncation_));
    for (const auto& [ka, ca] : terms_)
      for (const auto& [kb, cb] : other.terms_)
        out.add(ka.first.times(kb.first), lattice_add(ka.second, kb.second), ca * cb);
    return out;
  }

  VoaElement truncated(int truncation) const {
    VoaElement out(rank_, truncation);
    for (const auto& [key, c] : terms_) out.add(key.first, key.second, c);
    return out;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first.degree());
    return d;
  }

  double max_abs_coefficient() const {
    double m = 0;
    for (const auto& [key, c] : terms_) m = std::max(m, Ops::abs(c));
    return m;
  }

  friend bool operator==(const VoaElement& a, const VoaElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  int rank_;
  int truncation_;
  std::map<Key, S> terms_;
};

/// 1 = empty monomial at the lattice origin.
template <class S>
VoaElement<S> vacuum(int rank, int truncation = kUnbounded) {
  VoaElement<S> v(rank, truncation);
  v.add(DiffMonomial::one(), lattice_zero(rank), ScalarOps<S>::from_rational(Rational(1)));
  return v;
}

/// Pure exponential e^{phi_alpha}.
template <class S>
VoaElement<S> exp_phi(const LatticePoint& alpha, int truncation = kUnbounded) {
  VoaElement<S> v(static_cast<int>(alpha.size()), truncation);
  v.add(DiffMonomial::one(), alpha, ScalarOps<S>::from_rational(Rational(1)));
  return v;
}

/// d^order phi_alpha, expanded over basis directions by linearity.
template <class S>
VoaElement<S> dphi(const LatticePoint& alpha, int order, int truncation = kUnbounded) {
  const int rank = static_cast<int>(alpha.size());
  VoaElement<S> v(rank, truncation);
  for (int i = 0; i < rank; ++i) {
    if (alpha[i].is_zero()) continue;
    v.add(DiffMonomial::generator(i, order), lattice_zero(rank),
          ScalarOps<S>::from_rational(alpha[i]));
  }
  return v;
}

/// The H-module derivation: d.(u e^{phi_beta}) by Leibniz, with
/// d.d^k phi = d^{k+1} phi and d.e^{phi_beta} = dphi_beta e^{phi_beta}.
template <class S>
VoaElement<S> apply_derivation(const VoaElement<S>& v) {
  VoaElement<S> out(v.rank(), v.truncation());
  for (const auto& [key, coeff] : v.terms()) {
    const auto& [mono, point] = key;
    for (const auto& entry : mono.entries()) {
      DiffMonomial raised =
          mono.with_multiplicity_delta(entry.dir, entry.order, -1)
              .with_multiplicity_delta(entry.dir, entry.order + 1, +1);
      out.add(raised, point, coeff * ScalarOps<S>::from_rational(Rational(entry.mult)));
    }
    for (int i = 0; i < v.rank(); ++i) {
      if (point[i].is_zero()) continue;
      out.add(mono.with_multiplicity_delta(i, 1, +1), point,
              coeff * ScalarOps<S>::from_rational(point[i]));
    }
  }
  return out;
}

/// Differential polynomial P_{alpha,k} with (1/k!) d^k.e^{phi_alpha} =
/// P_{alpha,k} e^{phi_alpha}; computed by (k+1) P_{k+1} = d.P_k + P_k dphi_alpha.
template <class S>
VoaElement<S> diff_poly(const LatticePoint& alpha, int k, int truncation = kUnbounded) {
  const int rank = static_cast<int>(alpha.size());
  VoaElement<S> p = vacuum<S>(rank, truncation);
  const VoaElement<S> dphi1 = dphi<S>(alpha, 1, truncation);
  for (int j = 0; j < k; ++j) {
    VoaElement<S> next = apply_derivation(p);
    next += p.times(dphi1);
    p = next.scaled(ScalarOps<S>::from_rational(Rational(1, j + 1)));
  }
  return p;
}

// -------------------------------------------------------------- coproduct

template <class S>
struct TensorTerm {
  typename VoaElement<S>::Key left;
  typename VoaElement<S>::Key right;
  S coeff;
};

/// Coproduct on the commutative Hopf algebra: exponentials are grouplike,
/// the d^k phi are primitive, extended multiplicatively (so each generator
/// power splits binomially).
template <class S>
std::vector<TensorTerm<S>> coproduct(const VoaElement<S>& v) {
  std::vector<TensorTerm<S>> out;
  for (const auto& [key, coeff] : v.terms()) {
    const auto& [mono, point] = key;
    const auto& entries = mono.entries();
    // enumerate all splits: entry t sends j_t factors left, mult-j_t right
    std::vector<int> take(entries.size(), 0);
    while (true) {
      DiffMonomial left, right;
      Rational binom(1);
      for (size_t t = 0; t < entries.size(); ++t) {
        const auto& e = entries[t];
        if (take[t] > 0) left = left.with_multiplicity_delta(e.dir, e.order, take[t]);
        if (e.mult - take[t] > 0)
          right = right.with_multiplicity_delta(e.dir, e.order, e.mult - take[t]);
        binom *= binomial_exact(Rational(e.mult), take[t]);
      }
      out.push_back({{left, point}, {right, point},
                     coeff * ScalarOps<S>::from_rational(binom)});
      size_t t = 0;
      while (t < entries.size() && take[t] == entries[t].mult) take[t++] = 0;
      if (t == entries.size()) break;
      ++take[t];
    }
  }
  return out;
}

// ----------------------------------------------------- fractional Laurent

using Window = std::optional<std::pair<Rational, Rational>>;

/// Finitely supported map from rational exponents to S coefficients.
template <class S>
class FracLaurent {
 public:
  explicit FracLaurent(Window window = std::nullopt) : window_(std::move(window)) {}

  void add(const Rational& exponent, const S& coeff) {
    if (ScalarOps<S>::is_zero(coeff)) return;
    if (window_ && (exponent < window_->first || exponent > window_->second))
      throw WindowOverflowError("FracLaurent: exponent " + exponent.str() +
                                " outside window");
    auto [it, inserted] = coeffs_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (ScalarOps<S>::is_zero(it->second)) coeffs_.erase(it);
    }
  }

  const std::map<Rational, S>& coeffs() const { return coeffs_; }
  const Window& window() const { return window_; }
  bool is_zero() const { return coeffs_.empty(); }

  S coefficient(const Rational& exponent) const {
    const auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? S{} : it->second;
  }

  FracLaurent times(const FracLaurent& other) const {
    FracLaurent out;  // window checks do not survive products
    for (const auto& [ea, ca] : coeffs_)
      for (const auto& [eb, cb] : other.coeffs_) out.add(ea + eb, ca * cb);
    return out;
  }

  FracLaurent& operator+=(const FracLaurent& other) {
    for (const auto& [e, c] : other.coeffs_) add(e, c);
    return *this;
  }

  FracLaurent scaled(const S& factor) const {
    FracLaurent out(window_);
    if (ScalarOps<S>::is_zero(factor)) return out;
    for (const auto& [e, c] : coeffs_) out.add(e, c * factor);
    return out;
  }

  /// d/dz: m z^{m-1} termwise.
  FracLaurent d_dz() const {
    FracLaurent out;
    for (const auto& [e, c] : coeffs_)
      out.add(e - Rational(1), c * ScalarOps<S>::from_rational(e));
    return out;
  }

  friend bool operator==(const FracLaurent& a, const FracLaurent& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::map<Rational, S> coeffs_;
  Window window_;
};

// ------------------------------------------------------------ Hopf pairing

namespace detail {

struct GenList {
  std::vector<std::pair<int, int>> gens;  // (dir, order), multiplicities expanded
};

inline GenList expand(const DiffMonomial& mono) {
  GenList out;
  for (const auto& e : mono.entries())
    for (int t = 0; t < e.mult; ++t) out.gens.emplace_back(e.dir, e.order);
  return out;
}

inline Rational factorial(int k) {
  Rational f(1);
  for (int t = 2; t <= k; ++t) f *= Rational(t);
  return f;
}

// <d^j phi_a, d^k phi_b> = G_ab (-1)^{j-1} (j+k-1)! z^{-j-k}
// <d^j phi_a, e^{phi_beta}> = (a, beta) (-1)^{j-1} (j-1)! z^{-j}
// <e^{phi_alpha}, d^k phi_b> = -(alpha, b) (k-1)! z^{-k}
// All matchings of a given term pair share one exponent
// (alpha,beta) - |u_a| - |u_b|; the recursion sums the scalar weights.
template <class S>
S matching_sum(const Lattice& lattice, const GenList& left, const GenList& right,
               const LatticePoint& alpha, const LatticePoint& beta, size_t li,
               std::vector<bool>& used) {
  using Ops = ScalarOps<S>;
  if (li == left.gens.size()) {
    // remaining right generators pair against e^{phi_alpha}
    Rational w(1);
    for (size_t ri = 0; ri < right.gens.size(); ++ri) {
      if (used[ri]) continue;
      const auto [dir, k] = right.gens[ri];
      Rational g(0);
      for (int t = 0; t < lattice.rank(); ++t)
        if (!alpha[t].is_zero()) g += alpha[t] * lattice.gram(t, dir);
      w *= -g * factorial(k - 1);
      if (w.is_zero()) return Ops::from_rational(Rational(0));
    }
    return Ops::from_rational(w);
  }
  const auto [adir, j] = left.gens[li];
  S total = Ops::from_rational(Rational(0));
  // pair against e^{phi_beta}
  {
    Rational g(0);
    for (int t = 0; t < lattice.rank(); ++t)
      if (!beta[t].is_zero()) g += lattice.gram(adir, t) * beta[t];
    Rational w = g * factorial(j - 1);
    if (j % 2 == 0) w = -w;  // (-1)^{j-1}
    if (!w.is_zero()) {
      const S rest = matching_sum<S>(lattice, left, right, alpha, beta, li + 1, used);
      total += Ops::from_rational(w) * rest;
    }
  }
  // pair against each available right generator
  for (size_t ri = 0; ri < right.gens.size(); ++ri) {
    if (used[ri]) continue;
    const auto [bdir, k] = right.gens[ri];
    Rational w = lattice.gram(adir, bdir) * factorial(j + k - 1);
    if (j % 2 == 0) w = -w;
    if (w.is_zero()) continue;
    used[ri] = true;
    const S rest = matching_sum<S>(lattice, left, right, alpha, beta, li + 1, used);
    used[ri] = false;
    total += Ops::from_rational(w) * rest;
  }
  return total;
}

}  // namespace detail

/// Hopf pairing with coefficients in fractional Laurent polynomials,
/// extending the four generator rules by the pairing axioms.
template <class S>
FracLaurent<S> pairing(const Lattice& lattice, const VoaElement<S>& a,
                       const VoaElement<S>& b, Window window = std::nullopt) {
  FracLaurent<S> out(std::move(window));
  for (const auto& [ka, ca] : a.terms()) {
    const auto la = detail::expand(ka.first);
    for (const auto& [kb, cb] : b.terms()) {
      const auto lb = detail::expand(kb.first);
      std::vector<bool> used(lb.gens.size(), false);
      const S weight =
          detail::matching_sum<S>(lattice, la, lb, ka.second, kb.second, 0, used);
      if (ScalarOps<S>::is_zero(weight)) continue;
      const Rational exponent = lattice.inner(ka.second, kb.second) -
                                Rational(ka.first.degree() + kb.first.degree());
      out.add(exponent, ca * cb * weight);
    }
  }
  return out;
}

// --------------------------------------------------------- vertex operator

template <class S>
using VertexSeries = std::map<Rational, VoaElement<S>>;

/// Y(a) b = sum <a', b'> b'' (z^k / k!) d^k a'', expanded within the degree
/// truncation (and optional exponent window). Requires finite truncation:
/// the z-power series is infinite otherwise.
template <class S>
VertexSeries<S> vertex_op(const Lattice& lattice, const VoaElement<S>& a,
                          const VoaElement<S>& b, int truncation,
                          Window window = std::nullopt) {
  if (truncation == kUnbounded)
    throw NonConvergentError("vertex_op: needs a finite truncation degree");
  VertexSeries<S> out;
  const int rank = a.rank();
  const auto legs_a = coproduct(a);
  const auto legs_b = coproduct(b);
  for (const auto& la : legs_a) {
    VoaElement<S> aprime(rank), asecond(rank, truncation);
    aprime.add(la.left.first, la.left.second, ScalarOps<S>::from_rational(Rational(1)));
    asecond.add(la.right.first, la.right.second, la.coeff);
    for (const auto& lb : legs_b) {
      VoaElement<S> bprime(rank), bsecond(rank, truncation);
      bprime.add(lb.left.first, lb.left.second, ScalarOps<S>::from_rational(Rational(1)));
      bsecond.add(lb.right.first, lb.right.second, lb.coeff);

      const FracLaurent<S> paired = pairing(lattice, aprime, bprime);
      if (paired.is_zero()) continue;

      const int base_degree = la.right.first.degree() + lb.right.first.degree();
      VoaElement<S> deriv = asecond;  // (1/k!) d^k a'' built incrementally
      for (int k = 0; base_degree + k <= truncation; ++k) {
        if (k > 0) {
          deriv = apply_derivation(deriv).scaled(
              ScalarOps<S>::from_rational(Rational(1, k)));
          if (deriv.is_zero()) break;
        }
        const VoaElement<S> piece = bsecond.times(deriv);
        if (piece.is_zero()) continue;
        for (const auto& [exponent, coeff] : paired.coeffs()) {
          const Rational e = exponent + Rational(k);
          if (window && (e < window->first || e > window->second))
            throw WindowOverflowError("vertex_op: exponent " + e.str() +
                                      " outside window");
          auto [it, inserted] = out.try_emplace(e, VoaElement<S>(rank, truncation));
          it->second += piece.scaled(coeff);
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
  }
  return out;
}

/// The z^m coefficient of Y(a) b; finite without any truncation because the
/// z-power pins the derivative order per coproduct split.
template <class S>
VoaElement<S> mode_op(const Lattice& lattice, const VoaElement<S>& a, const Rational& m,
                      const VoaElement<S>& b, int truncation = kUnbounded) {
  VoaElement<S> out(a.rank(), truncation);
  const int rank = a.rank();
  for (const auto& la : coproduct(a)) {
    VoaElement<S> aprime(rank), asecond(rank);
    aprime.add(la.left.first, la.left.second, ScalarOps<S>::from_rational(Rational(1)));
    asecond.add(la.right.first, la.right.second, la.coeff);
    for (const auto& lb : coproduct(b)) {
      VoaElement<S> bprime(rank), bsecond(rank);
      bprime.add(lb.left.first, lb.left.second, ScalarOps<S>::from_rational(Rational(1)));
      bsecond.add(lb.right.first, lb.right.second, lb.coeff);
      const FracLaurent<S> paired = pairing(lattice, aprime, bprime);
      for (const auto& [exponent, coeff] : paired.coeffs()) {
        const Rational kr = m - exponent;
        if (!kr.is_integer() || kr.sign() < 0) continue;
        const long k = kr.to_long();
        VoaElement<S> deriv = asecond;
        Rational inv_fact(1);
        for (long t = 1; t <= k; ++t) {
          deriv = apply_derivation(deriv);
          inv_fact /= Rational(t);
        }
        out += bsecond.times(deriv).scaled(coeff *
                                           ScalarOps<S>::from_rational(inv_fact));
      }
    }
  }
  return out;
}

namespace detail {

template <class S>
S res_factor(const Rational& m) {
  if (m.is_integer())
    return ScalarOps<S>::from_rational(m == Rational(-1) ? Rational(1) : Rational(0));
  if constexpr (std::is_same_v<S, Complex>) {
    return monodromy::res(m);
  } else {
    throw PreconditionError(
        "exact-rational mode requires integral pairing exponents");
  }
}

}  // namespace detail

/// ResY(a): b -> Res(Y(a) b). For integral pairing exponents this is the
/// m = -1 mode; fractional exponents make every term contribute and demand
/// a finite truncation.
template <class S>
VoaElement<S> res_y(const Lattice& lattice, const VoaElement<S>& a,
                    const VoaElement<S>& b, int truncation = kUnbounded) {
  VoaElement<S> out(a.rank(), truncation);
  const int rank = a.rank();
  for (const auto& la : coproduct(a)) {
    VoaElement<S> aprime(rank), asecond(rank);
    aprime.add(la.left.first, la.left.second, ScalarOps<S>::from_rational(Rational(1)));
    asecond.add(la.right.first, la.right.second, la.coeff);
    for (const auto& lb : coproduct(b)) {
      VoaElement<S> bprime(rank), bsecond(rank);
      bprime.add(lb.left.first, lb.left.second, ScalarOps<S>::from_rational(Rational(1)));
      bsecond.add(lb.right.first, lb.right.second, lb.coeff);
      const FracLaurent<S> paired = pairing(lattice, aprime, bprime);
      if (paired.is_zero()) continue;

      const int base_degree = la.right.first.degree() + lb.right.first.degree();
      for (const auto& [exponent, coeff] : paired.coeffs()) {
        if (exponent.is_integer()) {
          // only z^{-1} survives the residue
          const Rational kr = Rational(-1) - exponent;
          if (!kr.is_integer() || kr.sign() < 0) continue;
          const long k = kr.to_long();
          if (truncation != kUnbounded && base_degree + k > truncation) continue;
          VoaElement<S> deriv = asecond;
          Rational inv_fact(1);
          for (long t = 1; t <= k; ++t) {
            deriv = apply_derivation(deriv);
            inv_fact /= Rational(t);
          }
          out += bsecond.times(deriv).scaled(coeff *
                                             ScalarOps<S>::from_rational(inv_fact));
        } else {
          if (truncation == kUnbounded)
            throw NonConvergentError(
                "res_y: fractional exponents produce an infinite series; "
                "set a finite truncation");
          VoaElement<S> deriv = asecond;
          for (int k = 0; base_degree + k <= truncation; ++k) {
            if (k > 0) {
              deriv = apply_derivation(deriv).scaled(
                  ScalarOps<S>::from_rational(Rational(1, k)));
              if (deriv.is_zero()) break;
            }
            const S factor = detail::res_factor<S>(exponent + Rational(k));
            if (ScalarOps<S>::is_zero(factor)) continue;
            out += bsecond.times(deriv).scaled(coeff * factor);
          }
        }
      }
    }
  }
  return out;
}

// ------------------------------------------------------- charge operators

/// Scalar charge operator: u e^{phi_beta} -> (alpha, beta) u e^{phi_beta}.
template <class S>
VoaElement<S> yer(const Lattice& lattice, const LatticePoint& alpha,
                  const VoaElement<S>& v) {
  VoaElement<S> out(v.rank(), v.truncation());
  for (const auto& [key, coeff] : v.terms()) {
    const Rational eigenvalue = lattice.inner(alpha, key.second);
    out.add(key.first, key.second, coeff * ScalarOps<S>::from_rational(eigenvalue));
  }
  return out;
}

/// Screening (momentum charge) operator zemlja_alpha = ResY(e^{phi_alpha}).
template <class S>
VoaElement<S> zemlja(const Lattice& lattice, const LatticePoint& alpha,
                     const VoaElement<S>& v, int truncation = kUnbounded) {
  return res_y(lattice, exp_phi<S>(alpha, truncation), v, truncation);
}

/// zeta_{alphas[0]} o ... o zeta_{alphas.back()} (v): the last entry acts
/// first, matching the operator product notation. Plain iteration truncates
/// every intermediate at the output degree; exact for integral pairings,
/// where each screening output is finite.
template <class S>
VoaElement<S> screening_product_iterated(const Lattice& lattice,
                                         const std::vector<LatticePoint>& alphas,
                                         const VoaElement<S>& v, int truncation) {
  VoaElement<S> cur = v.truncated(truncation);
  for (auto it = alphas.rbegin(); it != alphas.rend(); ++it)
    cur = zemlja(lattice, *it, cur, truncation);
  return cur;
}

struct DirectOptions {
  // Tail depth of the resummed intermediate series; 0 picks a default by n.
  int tail_terms = 0;
};

/// Iterated screenings with the intermediate series resummed numerically.
/// Fractional screenings of a pure exponential feed every intermediate
/// degree back into low output degrees (the pairing absorbs whole
/// differential factors as scalars), so plain degree truncation converges
/// only like a power law; this route keeps the retained P-indices per
/// screening as a numeric tensor, sums the absorbed indices to tail_terms,
/// and assembles the symbolic output at the end. Falls back to plain
/// iteration when v is not a single pure exponential.
VoaElement<Complex> screening_product_direct(const Lattice& lattice,
                                             const std::vector<LatticePoint>& alphas,
                                             const VoaElement<Complex>& v, int truncation,
                                             const DirectOptions& options = {});

template <class S>
VoaElement<S> screening_product_direct(const Lattice& lattice,
                                       const std::vector<LatticePoint>& alphas,
                                       const VoaElement<S>& v, int truncation) {
  return screening_product_iterated(lattice, alphas, v, truncation);
}

/// The n-fold product formula route for a pure exponential target:
/// sum over (k_i) of (prod_i P_{alpha_i, k_i}) e^{phi_{lambda+sum alpha}}
/// times F-((m_i + k_i, m_ij)) with m_i = (alpha_i, lambda),
/// m_ij = (alpha_i, alpha_j).
VoaElement<Complex> screening_product_formula(const Lattice& lattice,
                                              const std::vector<LatticePoint>& alphas,
                                              const LatticePoint& lambda, int truncation,
                                              const monodromy::SeriesOptions& series = {});

/// Smallness check |alpha_i|^2 <= 1 used as the screening-action warning.
bool screening_smallness(const Lattice& lattice, const std::vector<LatticePoint>& alphas);

/// Applies a formal relation (word combination over screening colors) to
/// e^{phi_lambda} and reports the largest surviving coefficient magnitude.
double check_nichols_on_vector(const Lattice& lattice,
                               const std::vector<LatticePoint>& alphas,
                               const nichols::WordCombination& relation,
                               const LatticePoint& lambda, int truncation);

// --------------------------------------------------------- trivial level

struct RelationCheck {
  std::string name;
  bool ok;
};

struct TrivialLevelReport {
  std::vector<RelationCheck> checks;
  bool all_ok = true;
};

enum class RootPreset { sl2, sl3 };

/// Verifies the Borel-part relations of the screenings on an integral root
/// lattice, exactly, on every monomial basis vector of degree <= truncation
/// with lattice points in a small box:
///   [z_a, z_b]_+ = z_{a+b} when (a,b) = -1;  [z_a, z_b]_{+-} = 0 when
///   (a,b) in {0,1};  [z_a, z_{-a}] = yer_a;  [yer_l, z_a] = (l,a) z_a.
TrivialLevelReport trivial_level_relations(RootPreset preset, int truncation);

}  // namespace screenlab::voa

#endif
