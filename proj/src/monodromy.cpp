#include "screenlab/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "screenlab/errors.hpp"

namespace screenlab::monodromy {

namespace {

bool odd(const Rational& integer_value) {
  return mpz_odd_p(integer_value.num().get_mpz_t()) != 0;
}

// Tracks shell magnitudes and decides convergence from an estimated
// polynomial decay rate; quiet shells must have estimated tails below tol.
class ShellTracker {
 public:
  ShellTracker(double tol, int quiet_needed) : tol_(tol), quiet_needed_(quiet_needed) {}

  // Returns true once converged. Throws DivergedError on sustained growth.
  bool push(double magnitude) {
    mags_.push_back(magnitude);
    const int s = static_cast<int>(mags_.size()) - 1;
    if (!std::isfinite(magnitude))
      throw DivergedError("series: non-finite shell encountered");
    if (s > 0 && magnitude > mags_[s - 1] && magnitude > tol_) {
      if (++growth_run_ >= 15)
        throw DivergedError("series: shell magnitudes keep growing");
    } else {
      growth_run_ = 0;
    }
    last_tail_ = tail_estimate();
    if (last_tail_ < tol_)
      ++quiet_run_;
    else
      quiet_run_ = 0;
    return quiet_run_ >= quiet_needed_;
  }

  double error_estimate() const {
    const double last = mags_.empty() ? 0.0 : mags_.back();
    return std::max(last, last_tail_);
  }

 private:
  // Smoothed magnitude: max over a short trailing window, so oscillation
  // zeros do not fake convergence.
  double smoothed(int s) const {
    double a = 0;
    for (int t = std::max(0, s - 1); t <= s; ++t) a = std::max(a, mags_[t]);
    return a;
  }

  // For shells decaying like s^{-p}, the tail behind shell s is about
  // a_s * s / (p - 1).
  double tail_estimate() const {
    const int s = static_cast<int>(mags_.size()) - 1;
    const double a_s = smoothed(s);
    if (a_s == 0.0) return 0.0;
    if (s < 4) return std::numeric_limits<double>::infinity();
    const int s0 = std::max(1, s / 2);
    const double a_0 = smoothed(s0);
    if (a_0 <= a_s) return std::numeric_limits<double>::infinity();
    const double p = std::log(a_0 / a_s) / std::log(static_cast<double>(s) / s0);
    if (p <= 1.02) return std::numeric_limits<double>::infinity();
    return a_s * static_cast<double>(s) / (p - 1.0);
  }

  double tol_;
  int quiet_needed_;
  int quiet_run_ = 0;
  int growth_run_ = 0;
  double last_tail_ = std::numeric_limits<double>::infinity();
  std::vector<double> mags_;
};

// Per-variable data with the rational bookkeeping hoisted out of the term
// loop: the base exponent B_i = m_i + sum_{i<j} m_ij is shifted by integers
// only, so integrality and the residue numerator are constant per variable.
struct CompiledSeries {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;          // (i,j), i<j
  std::vector<char> base_is_int;
  std::vector<long> base_int;                      // when integral
  std::vector<double> base_dbl;
  std::vector<Complex> numerator;                  // (e^{2 pi i B_i}-1)/(2 pi i)
  std::vector<std::vector<double>> binom;          // signed (-1)^k C(m_ij, k)
  bool has_hbar = false;
  std::vector<std::vector<double>> hbar_pow;       // [i][cap + shift] = hbar_i^{B_i + shift}
  int cap = 0;

  static CompiledSeries build(const MonodromyParams& p, int cap, bool use_hbar) {
    CompiledSeries cs;
    cs.n = p.n();
    cs.cap = cap;
    for (int i = 0; i < cs.n; ++i)
      for (int j = i + 1; j < cs.n; ++j) cs.pairs.emplace_back(i, j);

    for (int i = 0; i < cs.n; ++i) {
      Rational base = p.m[i];
      for (int j = i + 1; j < cs.n; ++j) base += p.pair(i, j);
      cs.base_is_int.push_back(base.is_integer() ? 1 : 0);
      cs.base_int.push_back(base.is_integer() ? base.to_long() : 0);
      cs.base_dbl.push_back(base.to_double());
      cs.numerator.push_back(expm1_2pii_over_2pii(base));
      if (use_hbar) {
        const double h = (*p.hbar)[i];
        std::vector<double> pow(2 * cap + 1);
        for (int s = -cap; s <= cap; ++s)
          pow[cap + s] = std::pow(h, base.to_double() + s);
        cs.hbar_pow.push_back(std::move(pow));
      }
    }
    cs.has_hbar = use_hbar;

    for (const auto& [i, j] : cs.pairs) {
      const double mij = p.pair(i, j).to_double();
      std::vector<double> b(cap + 1);
      double c = 1.0;
      for (int k = 0; k <= cap; ++k) {
        b[k] = c;                                         // (-1)^k C(mij, k)
        c *= -(mij - k) / static_cast<double>(k + 1);
      }
      cs.binom.push_back(std::move(b));
    }
    return cs;
  }

  // Value of the term at the multi-index k over pairs.
  Complex term(const std::vector<int>& k, std::vector<int>& shift_scratch) const {
    double real_weight = 1.0;
    std::fill(shift_scratch.begin(), shift_scratch.end(), 0);
    for (size_t pidx = 0; pidx < pairs.size(); ++pidx) {
      const double b = binom[pidx][k[pidx]];
      if (b == 0.0) return Complex(0, 0);
      real_weight *= b;
      shift_scratch[pairs[pidx].first] -= k[pidx];
      shift_scratch[pairs[pidx].second] += k[pidx];
    }
    Complex value(real_weight, 0.0);
    for (int i = 0; i < n; ++i) {
      const int s = shift_scratch[i];
      if (base_is_int[i]) {
        if (base_int[i] + s != -1) return Complex(0, 0);
        if (has_hbar) value *= hbar_pow[i][cap + s];
      } else {
        Complex factor = numerator[i] / (1.0 + base_dbl[i] + s);
        if (has_hbar) factor *= hbar_pow[i][cap + s];
        value *= factor;
      }
    }
    return value;
  }
};

// Enumerates all (k_pair) with given total degree, accumulating the shell sum.
void shell_sum_rec(const CompiledSeries& cs, std::vector<int>& k, size_t pidx, int remaining,
                   std::vector<int>& scratch, Complex& acc, std::int64_t& terms) {
  if (pidx + 1 == k.size()) {
    k[pidx] = remaining;
    acc += cs.term(k, scratch);
    ++terms;
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    k[pidx] = v;
    shell_sum_rec(cs, k, pidx + 1, remaining - v, scratch, acc, terms);
  }
}

EvalReport sum_series(const MonodromyParams& p, const SeriesOptions& opt, bool use_hbar) {
  p.validate();
  const int cap = opt.shell_cap > 0 ? opt.shell_cap : default_shell_cap(p.n());
  const CompiledSeries cs = CompiledSeries::build(p, cap, use_hbar);

  EvalReport report;
  report.method = Method::series;

  std::vector<int> scratch(cs.n, 0);
  if (cs.pairs.empty()) {
    std::vector<int> k;
    report.value = cs.term(k, scratch);
    report.terms_or_nodes = 1;
    report.converged = true;
    report.abs_error_estimate = 0.0;
    return report;
  }

  ShellTracker tracker(opt.tol, opt.quiet_shells);
  Complex total(0, 0);
  std::vector<int> k(cs.pairs.size(), 0);
  for (int s = 0; s <= cap; ++s) {
    Complex shell(0, 0);
    shell_sum_rec(cs, k, 0, s, scratch, shell, report.terms_or_nodes);
    total += shell;
    if (tracker.push(std::abs(shell))) {
      report.value = total;
      report.converged = true;
      report.abs_error_estimate = tracker.error_estimate();
      return report;
    }
  }
  report.value = total;
  report.converged = false;
  report.abs_error_estimate = tracker.error_estimate();
  if (opt.throw_on_cap)
    throw ShellCapError("f series: shell cap reached before stabilization");
  return report;
}

}  // namespace

const Rational& MonodromyParams::pair(int i, int j) const {
  const auto key = std::minmax(i, j);
  const auto it = mm.find({key.first, key.second});
  if (it == mm.end()) throw PreconditionError("MonodromyParams: missing m_ij entry");
  return it->second;
}

MonodromyParams MonodromyParams::n2(const Rational& m1, const Rational& m2,
                                    const Rational& m12) {
  MonodromyParams p;
  p.m = {m1, m2};
  p.mm[{0, 1}] = m12;
  return p;
}

MonodromyParams MonodromyParams::permuted_by_inverse(const std::vector<int>& sigma) const {
  const int size = n();
  std::vector<int> inv(size);
  for (int i = 0; i < size; ++i) inv[sigma[i]] = i;
  MonodromyParams out;
  out.m.resize(size);
  for (int i = 0; i < size; ++i) out.m[i] = m[inv[i]];
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) out.mm[{i, j}] = pair(inv[i], inv[j]);
  out.hbar = hbar;
  return out;
}

void MonodromyParams::validate() const {
  const int size = n();
  if (size < 1) throw PreconditionError("MonodromyParams: need n >= 1");
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) pair(i, j);
  if (hbar) {
    if (static_cast<int>(hbar->size()) != size)
      throw PreconditionError("MonodromyParams: hbar length mismatch");
    for (double h : *hbar)
      if (!(h > 0)) throw PreconditionError("MonodromyParams: hbar must be positive");
  }
}

Complex res(const Rational& m, double hbar) {
  if (!(hbar > 0)) throw PreconditionError("res: hbar must be positive");
  if (m.is_integer()) return (m == Rational(-1)) ? Complex(1, 0) : Complex(0, 0);
  const Rational m1 = m + Rational(1);
  const Complex num = expm1_2pii_over_2pii(m1);  // (e^{2 pi i (m+1)}-1)/(2 pi i)
  return std::pow(hbar, m1.to_double()) * num / m1.to_double();
}

bool fractured(const MonodromyParams& p) {
  for (int i = 0; i < p.n(); ++i) {
    Rational s = p.m[i];
    for (int j = i + 1; j < p.n(); ++j) s += p.pair(i, j);
    if (s.is_integer()) return false;
  }
  return true;
}

std::optional<std::vector<int>> convergence_violation(const MonodromyParams& p) {
  const int n = p.n();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    if (subset.size() < 2) continue;
    Rational sum(0);
    for (size_t a = 0; a < subset.size(); ++a)
      for (size_t b = a + 1; b < subset.size(); ++b) sum += p.pair(subset[a], subset[b]);
    if (!(sum > Rational(-static_cast<long>(subset.size()))))
      return subset;
  }
  return std::nullopt;
}

int default_shell_cap(int n) { return n <= 2 ? 400 : 120; }

EvalReport f_minus(const MonodromyParams& p, const SeriesOptions& opt) {
  return sum_series(p, opt, /*use_hbar=*/false);
}

EvalReport f_hbar(const MonodromyParams& p, const SeriesOptions& opt) {
  if (!p.hbar) throw PreconditionError("f_hbar: params carry no hbar");
  return sum_series(p, opt, /*use_hbar=*/true);
}

Complex f_minus_integral_case(const Rational& m_a, const Rational& m_b,
                              const Rational& m_ab) {
  const Rational aab = m_a + m_ab;
  const bool b_int = m_b.is_integer();
  const bool aab_int = aab.is_integer();
  if (!b_int && !aab_int)
    throw PreconditionError("f_minus_integral_case: arguments fully fractured");

  const Rational total = m_a + m_b + m_ab + Rational(2);
  if (b_int && aab_int) {
    const Rational kb = -m_b - Rational(1);
    if (total.is_zero() && kb.sign() >= 0) {
      const double c = binomial(m_ab.to_double(), kb.to_long());
      return Complex(odd(m_b + Rational(1)) ? -c : c, 0.0);
    }
    return Complex(0, 0);
  }
  if (b_int) {
    const Rational kb = -m_b - Rational(1);
    if (kb.sign() < 0) return Complex(0, 0);
    const Complex num = expm1_2pii_over_2pii(aab);
    const double c = binomial(m_ab.to_double(), kb.to_long());
    const double sign = odd(m_b + Rational(1)) ? -1.0 : 1.0;
    return num / total.to_double() * sign * c;
  }
  // m_b fractional, m_a + m_ab integral: the series collapses to the single
  // index k = m_a + m_ab + 1 >= 0.
  const Rational ka = aab + Rational(1);
  if (ka.sign() < 0) return Complex(0, 0);
  const Complex num = expm1_2pii_over_2pii(m_b);
  const double c = binomial(m_ab.to_double(), ka.to_long());
  const double sign = odd(ka) ? -1.0 : 1.0;
  return num / total.to_double() * sign * c;
}

EvalReport f_plus_n2(const Rational& m_a, const Rational& m_b, const Rational& m_ab,
                     const SeriesOptions& opt) {
  const int cap = opt.shell_cap > 0 ? opt.shell_cap : default_shell_cap(2);
  EvalReport report;
  report.method = Method::series;
  ShellTracker tracker(opt.tol, opt.quiet_shells);
  Complex total(0, 0);
  const Rational mba = m_b + m_a;
  const double ma_dbl = m_a.to_double();
  double c = 1.0;  // C(m_a, k), updated incrementally
  for (int k = 0; k <= cap; ++k) {
    if (k > 0) c *= (ma_dbl - (k - 1)) / static_cast<double>(k);
    const Complex term = res(m_ab + Rational(k)) * res(mba - Rational(k)) * c;
    total += term;
    ++report.terms_or_nodes;
    if (tracker.push(std::abs(term))) {
      report.value = total;
      report.converged = true;
      report.abs_error_estimate = tracker.error_estimate();
      return report;
    }
  }
  report.value = total;
  report.abs_error_estimate = tracker.error_estimate();
  if (opt.throw_on_cap)
    throw ShellCapError("f_plus_n2: cap reached before stabilization");
  return report;
}

}  // namespace screenlab::monodromy
