#ifndef SCREENLAB_RATIONAL_HPP
#define SCREENLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "screenlab/errors.hpp"

namespace screenlab {

/// Exact rational number with arbitrary-precision integer parts.
///
/// Every exponent in the library (lattice inner products, phase exponents,
/// fractional z-powers) lives here, so integrality case splits are decided
/// exactly and never by a floating tolerance. Always stored in lowest terms
/// with positive denominator.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long num) : v_(num) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw PreconditionError("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "p/q" or "p" with an optional leading minus sign.
  static Rational parse(const std::string& text);

  const mpq_class& raw() const { return v_; }
  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }

  double to_double() const { return v_.get_d(); }

  /// The integer value; requires is_integer() and a value that fits in long.
  long to_long() const {
    if (!is_integer()) throw PreconditionError("Rational::to_long: not an integer");
    if (!v_.get_num().fits_slong_p())
      throw PreconditionError("Rational::to_long: out of range");
    return v_.get_num().get_si();
  }

  /// Largest integer <= value.
  Rational floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return Rational(mpq_class(q));
  }

  /// Canonical representative of this value mod 2, in [0, 2).
  Rational mod2() const {
    Rational half = *this / Rational(2);
    Rational frac = *this - Rational(2) * half.floor();
    return frac;
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_ == 0) throw PreconditionError("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exact integrality test; nothing more than den == 1 after reduction.
inline bool is_integer(const Rational& m) { return m.is_integer(); }

/// A phase e^{i*pi*m} represented by its exact exponent m.
///
/// Two phases are equal iff the exponents agree mod 2; products add
/// exponents mod 2. The stored representative is always in [0, 2).
class PhaseExponent {
 public:
  PhaseExponent() : m_(0) {}
  explicit PhaseExponent(const Rational& m) : m_(m.mod2()) {}

  const Rational& exponent() const { return m_; }

  PhaseExponent& operator*=(const PhaseExponent& o) {
    m_ = (m_ + o.m_).mod2();
    return *this;
  }
  friend PhaseExponent operator*(PhaseExponent a, const PhaseExponent& b) { return a *= b; }

  friend bool operator==(const PhaseExponent& a, const PhaseExponent& b) {
    return a.m_ == b.m_;
  }
  friend bool operator!=(const PhaseExponent& a, const PhaseExponent& b) {
    return a.m_ != b.m_;
  }

 private:
  Rational m_;  // reduced mod 2
};

}  // namespace screenlab

#endif
