#include "screenlab/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "screenlab/errors.hpp"

namespace screenlab::selberg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// log(1 - prod u_t) accumulated stably via 1 - ab = (1-a) + a(1-b); the
// chain is fed one factor at a time.
struct LogOneMinusProd {
  double log_prod = 0.0;     // log of the running product
  double log_comp = kNegInf;  // log(1 - running product)

  void push(double log_u, double log_one_minus_u) {
    log_comp = log_add_exp(log_comp, log_prod + log_one_minus_u);
    log_prod += log_u;
  }
};

// tanh-sinh rule carrying log-space node data so power-law endpoint
// singularities evaluate without under/overflow.
struct TsRule {
  std::vector<double> log_u;     // log u_k
  std::vector<double> log_comp;  // log (1 - u_k)
  std::vector<double> log_w;     // log of quadrature weight
};

TsRule ts_rule(int level) {
  TsRule rule;
  const double h = 1.0 / static_cast<double>(1 << level);
  const double t_max = 5.5;
  const long kmax = static_cast<long>(t_max / h);
  for (long k = -kmax; k <= kmax; ++k) {
    const double t = k * h;
    const double sh = (kPi / 2.0) * std::sinh(t);
    // u = sigmoid(2 sh); log u and log(1-u) stay accurate in both tails.
    const double log_u = -std::log1p(std::exp(-2.0 * sh));
    const double log_comp = -std::log1p(std::exp(2.0 * sh));
    // du/dt = pi cosh(t) u (1-u)
    const double log_w = std::log(h * kPi * std::cosh(t)) + log_u + log_comp;
    rule.log_u.push_back(log_u);
    rule.log_comp.push_back(log_comp);
    rule.log_w.push_back(log_w);
  }
  return rule;
}

struct CompiledIntegrand {
  int n;
  std::vector<double> a;      // per-axis power of u_t after substitution
  std::vector<double> mbar;   // per-variable (1 - z_i) powers
  std::vector<std::vector<double>> mm;  // full symmetric m_ij as doubles
  bool bars_zero;

  static CompiledIntegrand build(const SelbergParams& p) {
    CompiledIntegrand c;
    c.n = p.n();
    c.mm.assign(c.n, std::vector<double>(c.n, 0.0));
    for (int i = 0; i < c.n; ++i)
      for (int j = i + 1; j < c.n; ++j)
        c.mm[i][j] = c.mm[j][i] = p.pair(i, j).to_double();
    c.bars_zero = true;
    for (const auto& mb : p.mbar) {
      c.mbar.push_back(mb.to_double());
      if (!mb.is_zero()) c.bars_zero = false;
    }
    for (int t = 0; t < c.n; ++t) {
      Rational at(c.n - 1 - t);
      for (int i = t; i < c.n; ++i) {
        at += p.m[i];
        for (int j = i + 1; j < c.n; ++j) at += p.pair(i, j);
      }
      c.a.push_back(at.to_double());
    }
    return c;
  }
};

// Deterministic tensor-product tanh-sinh evaluation for n <= 3. With all
// mbar = 0 no factor couples to u_1, so the first axis separates and n = 3
// costs O(N^2) instead of O(N^3).
double ts_value(const CompiledIntegrand& c, const TsRule& r, std::int64_t& nodes) {
  const int N = static_cast<int>(r.log_u.size());
  const int n = c.n;

  if (n == 1) {
    double sum = 0;
    for (int i = 0; i < N; ++i)
      sum += std::exp(c.a[0] * r.log_u[i] + c.mbar[0] * r.log_comp[i] + r.log_w[i]);
    nodes += N;
    return sum;
  }

  if (c.bars_zero) {
    double axis0 = 0;
    for (int i = 0; i < N; ++i) axis0 += std::exp(c.a[0] * r.log_u[i] + r.log_w[i]);
    nodes += N;
    if (n == 2) {
      double axis1 = 0;
      for (int i = 0; i < N; ++i)
        axis1 += std::exp(c.a[1] * r.log_u[i] + c.mm[0][1] * r.log_comp[i] + r.log_w[i]);
      nodes += N;
      return axis0 * axis1;
    }
    // n == 3: axes 2 and 3 couple through (1 - u_2 u_3)^{m_13}.
    double coupled = 0;
    for (int i = 0; i < N; ++i) {
      const double base_i = c.a[1] * r.log_u[i] + c.mm[0][1] * r.log_comp[i] + r.log_w[i];
      for (int j = 0; j < N; ++j) {
        const double log_pair =
            log_add_exp(r.log_comp[i], r.log_u[i] + r.log_comp[j]);  // log(1 - u_i u_j)
        const double le = base_i + c.a[2] * r.log_u[j] + c.mm[1][2] * r.log_comp[j] +
                          c.mm[0][2] * log_pair + r.log_w[j];
        coupled += std::exp(le);
      }
    }
    nodes += static_cast<std::int64_t>(N) * N;
    return axis0 * coupled;
  }

  // General n <= 3 with (1 - z_i) factors; z_i = u_1 ... u_i.
  double sum = 0;
  for (int i0 = 0; i0 < N; ++i0) {
    LogOneMinusProd z0;
    z0.push(r.log_u[i0], r.log_comp[i0]);
    const double base0 = c.a[0] * r.log_u[i0] + c.mbar[0] * z0.log_comp + r.log_w[i0];
    if (base0 == kNegInf) continue;
    if (n == 2) {
      for (int i1 = 0; i1 < N; ++i1) {
        LogOneMinusProd z1 = z0;
        z1.push(r.log_u[i1], r.log_comp[i1]);
        const double le = base0 + c.a[1] * r.log_u[i1] + c.mm[0][1] * r.log_comp[i1] +
                          c.mbar[1] * z1.log_comp + r.log_w[i1];
        sum += std::exp(le);
      }
    } else {
      for (int i1 = 0; i1 < N; ++i1) {
        LogOneMinusProd z1 = z0;
        z1.push(r.log_u[i1], r.log_comp[i1]);
        const double base1 = base0 + c.a[1] * r.log_u[i1] + c.mm[0][1] * r.log_comp[i1] +
                             c.mbar[1] * z1.log_comp + r.log_w[i1];
        if (base1 == kNegInf) continue;
        for (int i2 = 0; i2 < N; ++i2) {
          LogOneMinusProd z2 = z1;
          z2.push(r.log_u[i2], r.log_comp[i2]);
          const double log_pair =
              log_add_exp(r.log_comp[i1], r.log_u[i1] + r.log_comp[i2]);
          const double le = base1 + c.a[2] * r.log_u[i2] + c.mm[1][2] * r.log_comp[i2] +
                            c.mm[0][2] * log_pair + c.mbar[2] * z2.log_comp +
                            r.log_w[i2];
          sum += std::exp(le);
        }
      }
    }
  }
  nodes += (n == 2) ? static_cast<std::int64_t>(N) * N
                    : static_cast<std::int64_t>(N) * N * N;
  return sum;
}

EvalReport selberg_ts(const CompiledIntegrand& c, const QuadratureOptions& opt) {
  EvalReport report;
  report.method = Method::quadrature;
  // The full 3-d tensor (needed only when bars are present) is capped a
  // level earlier to keep node counts sane.
  const int max_level =
      (c.n == 3 && !c.bars_zero) ? std::min(opt.max_level, 6) : opt.max_level;
  double prev = 0;
  bool have_prev = false;
  for (int level = 3; level <= max_level; ++level) {
    const TsRule rule = ts_rule(level);
    const double value = ts_value(c, rule, report.terms_or_nodes);
    if (have_prev) {
      const double delta = std::fabs(value - prev);
      if (delta <= opt.tol * std::max(1.0, std::fabs(value))) {
        report.value = Complex(value, 0);
        report.abs_error_estimate = std::max(delta, 1e-15 * std::fabs(value));
        report.converged = true;
        return report;
      }
    }
    prev = value;
    have_prev = true;
  }
  report.value = Complex(prev, 0);
  report.abs_error_estimate = std::fabs(prev);  // no stabilization achieved
  report.converged = false;
  if (opt.throw_on_budget)
    throw BudgetError("selberg: tanh-sinh level cap reached before tolerance");
  return report;
}

// --- Monte Carlo path for 4 <= n <= 6 ---------------------------------- //

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

// Per-axis importance density: an equal mixture of u^{atilde} and
// (1-u)^{btilde} power laws matching the clamped singular exponents.
struct AxisSampler {
  double atilde, btilde;

  double sample(double u01, double pick) const {
    if (pick < 0.5) return std::pow(u01, 1.0 / (1.0 + atilde));
    return 1.0 - std::pow(u01, 1.0 / (1.0 + btilde));
  }
  double log_density(double u) const {
    const double p = 0.5 * (1.0 + atilde) * std::pow(u, atilde) +
                     0.5 * (1.0 + btilde) * std::pow(1.0 - u, btilde);
    return std::log(p);
  }
};

EvalReport selberg_mc(const CompiledIntegrand& c, const QuadratureOptions& opt) {
  const int n = c.n;
  std::vector<AxisSampler> samplers;
  for (int t = 0; t < n; ++t) {
    AxisSampler s;
    // match the u^{A_t} power on the left (also for large positive A_t, where
    // uniform proposals starve) and the adjacent-diagonal singularity on the
    // right
    s.atilde = std::max(c.a[t], -0.95);
    const double right = (t >= 1) ? c.mm[t - 1][t] : c.mbar[0];
    s.btilde = std::max(std::min(right, 0.0), -0.95);
    samplers.push_back(s);
  }

  EvalReport report;
  report.method = Method::monte_carlo;
  SplitMix64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 12345);

  const int strata = 64;
  double sum = 0, sum_sq = 0;
  std::int64_t count = 0;
  std::vector<double> u(n), log_u(n), log_comp(n);

  while (count < opt.sample_cap) {
    const std::int64_t batch = 100'000;
    for (std::int64_t b = 0; b < batch; ++b) {
      const double q0 = (static_cast<double>(b % strata) + rng.uniform()) / strata;
      u[0] = samplers[0].sample(q0, rng.uniform());
      for (int t = 1; t < n; ++t) u[t] = samplers[t].sample(rng.uniform(), rng.uniform());

      bool dead = false;
      double log_f = 0;
      for (int t = 0; t < n; ++t) {
        if (!(u[t] > 0.0) || !(u[t] < 1.0)) {
          dead = true;
          break;
        }
        log_u[t] = std::log(u[t]);
        log_comp[t] = std::log1p(-u[t]);
        log_f += c.a[t] * log_u[t] - samplers[t].log_density(u[t]);
      }
      if (!dead) {
        LogOneMinusProd z;
        for (int i = 0; i < n; ++i) {
          z.push(log_u[i], log_comp[i]);
          if (c.mbar[i] != 0.0) log_f += c.mbar[i] * z.log_comp;
        }
        for (int i = 0; i + 1 < n; ++i) {
          LogOneMinusProd tail;
          for (int j = i + 1; j < n; ++j) {
            tail.push(log_u[j], log_comp[j]);
            log_f += c.mm[i][j] * tail.log_comp;
          }
        }
        const double f = std::exp(log_f);
        sum += f;
        sum_sq += f * f;
      }
      ++count;
    }
    const double mean = sum / static_cast<double>(count);
    const double var = std::max(0.0, sum_sq / static_cast<double>(count) - mean * mean);
    const double stderr_est = std::sqrt(var / static_cast<double>(count));
    report.value = Complex(mean, 0);
    report.abs_error_estimate = stderr_est;
    report.terms_or_nodes = count;
    if (stderr_est <= opt.mc_rel_tol * std::fabs(mean) && count >= 3 * batch) {
      report.converged = true;
      return report;
    }
  }
  report.converged = false;
  if (opt.throw_on_budget)
    throw BudgetError("selberg: Monte Carlo sample cap reached before tolerance");
  return report;
}

bool is_nonpositive_integer(const Rational& r) {
  return r.is_integer() && r.sign() <= 0;
}

void check_beta_poles(const Rational& a, const Rational& b) {
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b) ||
      is_nonpositive_integer(a + b))
    throw PoleError("beta arguments hit a non-positive integer");
}

}  // namespace

const Rational& SelbergParams::pair(int i, int j) const {
  const auto key = std::minmax(i, j);
  const auto it = mm.find({key.first, key.second});
  if (it == mm.end()) throw PreconditionError("SelbergParams: missing m_ij entry");
  return it->second;
}

SelbergParams SelbergParams::uniform(int n, const Rational& m_i, const Rational& mbar_i,
                                     const Rational& m_ij) {
  SelbergParams p;
  p.m.assign(n, m_i);
  p.mbar.assign(n, mbar_i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.mm[{i, j}] = m_ij;
  return p;
}

SelbergParams SelbergParams::n2(const Rational& m1, const Rational& m2,
                                const Rational& mbar, const Rational& m12) {
  SelbergParams p;
  p.m = {m1, m2};
  p.mbar = {mbar, mbar};
  p.mm[{0, 1}] = m12;
  return p;
}

void SelbergParams::validate() const {
  if (mbar.size() != m.size())
    throw PreconditionError("SelbergParams: mbar length mismatch");
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j) pair(i, j);
}

ConvergenceReport selberg_convergent(const SelbergParams& p) {
  p.validate();
  ConvergenceReport report;
  const int n = p.n();
  const auto fail = [&](const std::string& what) {
    report.convergent = false;
    report.violations.push_back(what);
  };

  // (i) sum_{r<=i<j<=s} m_ij > -(s-r) for all 1 <= r < s <= n   (1-based)
  for (int r = 1; r <= n; ++r) {
    for (int s = r + 1; s <= n; ++s) {
      Rational sum(0);
      for (int i = r; i <= s; ++i)
        for (int j = i + 1; j <= s; ++j) sum += p.pair(i - 1, j - 1);
      if (!(sum > Rational(-(s - r)))) {
        std::ostringstream os;
        os << "pair condition [" << r << "," << s << "]: " << sum.str()
           << " must exceed " << -(s - r);
        fail(os.str());
      }
    }
  }
  // (ii) sum_{i<=r} mbar_i + sum_{j<i<=r} m_ji > -r
  for (int r = 1; r <= n; ++r) {
    Rational sum(0);
    for (int i = 1; i <= r; ++i) {
      sum += p.mbar[i - 1];
      for (int j = 1; j < i; ++j) sum += p.pair(j - 1, i - 1);
    }
    if (!(sum > Rational(-r))) {
      std::ostringstream os;
      os << "bar condition at r=" << r << ": " << sum.str() << " must exceed " << -r;
      fail(os.str());
    }
  }
  // (iii) sum_{r<=i} m_i + sum_{r<=i<j} m_ij > -(n-r+1)
  for (int r = 1; r <= n; ++r) {
    Rational sum(0);
    for (int i = r; i <= n; ++i) {
      sum += p.m[i - 1];
      for (int j = i + 1; j <= n; ++j) sum += p.pair(i - 1, j - 1);
    }
    if (!(sum > Rational(-(n - r + 1)))) {
      std::ostringstream os;
      os << "tail condition at r=" << r << ": " << sum.str() << " must exceed "
         << -(n - r + 1);
      fail(os.str());
    }
  }
  return report;
}

EvalReport selberg(const SelbergParams& p, const QuadratureOptions& opt) {
  p.validate();
  if (p.n() == 0) {
    EvalReport r;
    r.value = Complex(1, 0);
    r.converged = true;
    r.method = Method::quadrature;
    return r;
  }
  const ConvergenceReport conv = selberg_convergent(p);
  if (!conv.convergent) {
    std::string msg = "selberg: divergent parameters:";
    for (const auto& v : conv.violations) msg += " [" + v + "]";
    throw PreconditionError(msg);
  }
  const CompiledIntegrand c = CompiledIntegrand::build(p);
  if (p.n() <= 3) return selberg_ts(c, opt);
  if (p.n() <= 6) return selberg_mc(c, opt);
  throw SizeLimitError("selberg: n > 6 not supported");
}

Complex selberg_closed_n2(const Rational& m1, const Rational& m2, const Rational& m12) {
  const Rational denom = Rational(2) + m1 + m2 + m12;
  if (denom.is_zero()) throw PoleError("selberg_closed_n2: prefactor pole");
  check_beta_poles(m2 + Rational(1), m12 + Rational(1));
  return beta(m2.to_double() + 1.0, m12.to_double() + 1.0) / denom.to_double();
}

Complex selberg_product_formula(const Rational& a, const Rational& b, const Rational& c,
                                int k) {
  if (k < 1) throw PreconditionError("selberg_product_formula: need k >= 1");
  double log_abs = 0;
  int sign = 1;
  const auto factor = [&](const Rational& x, int direction) {
    if (is_nonpositive_integer(x))
      throw PoleError("selberg_product_formula: Gamma pole at " + x.str());
    const SignedLogGamma g = log_gamma_signed(x.to_double());
    log_abs += direction * g.log_abs;
    sign *= g.sign;
  };
  for (int j = 0; j < k; ++j) {
    factor(a + Rational(j) * c, +1);
    factor(b + Rational(j) * c, +1);
    factor(Rational(1) + Rational(j + 1) * c, +1);
    factor(a + b + Rational(k + j - 1) * c, -1);
    factor(Rational(1) + c, -1);
  }
  double log_kfact = 0;
  for (int j = 2; j <= k; ++j) log_kfact += std::log(static_cast<double>(j));
  return Complex(sign * std::exp(log_abs - log_kfact), 0);
}

std::pair<Complex, SelbergParams> selberg_reduce_first(const SelbergParams& p) {
  p.validate();
  for (const auto& mb : p.mbar)
    if (!mb.is_zero())
      throw PreconditionError("selberg_reduce_first: requires all mbar = 0");
  const int n = p.n();
  if (n < 1) throw PreconditionError("selberg_reduce_first: need n >= 1");
  Rational denom(n);
  for (const auto& mi : p.m) denom += mi;
  for (const auto& [ij, v] : p.mm) denom += v;
  if (denom.is_zero()) throw PoleError("selberg_reduce_first: zero denominator");

  SelbergParams reduced;
  for (int i = 1; i < n; ++i) {
    reduced.m.push_back(p.m[i]);
    reduced.mbar.push_back(p.pair(0, i));
  }
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) reduced.mm[{i - 1, j - 1}] = p.pair(i, j);
  return {Complex(1.0 / denom.to_double(), 0), reduced};
}

}  // namespace screenlab::selberg
