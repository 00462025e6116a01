#include "screenlab/symformula.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "screenlab/errors.hpp"

namespace screenlab::symformula {

namespace {

Complex two_pi_i_pow_inverse(int n) {
  // 1/(2 pi i)^n, with 1/(2 pi i) = -i/(2 pi)
  Complex v(1, 0);
  for (int t = 0; t < n; ++t) v *= Complex(0, -1.0 / kTwoPi);
  return v;
}

selberg::SelbergParams permuted_selberg(const monodromy::MonodromyParams& p,
                                        const combinat::Permutation& eta) {
  const combinat::Permutation inv = eta.inverse();
  selberg::SelbergParams sp;
  const int n = p.n();
  for (int i = 0; i < n; ++i) {
    sp.m.push_back(p.m[inv(i)]);
    sp.mbar.push_back(Rational(0));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sp.mm[{i, j}] = p.pair(inv(i), inv(j));
  return sp;
}

}  // namespace

std::optional<std::vector<int>> smallness_violation(const monodromy::MonodromyParams& p) {
  const int n = p.n();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    if (subset.size() < 2) continue;
    Rational sum(0);
    for (size_t a = 0; a < subset.size(); ++a)
      for (size_t b = a + 1; b < subset.size(); ++b) sum += p.pair(subset[a], subset[b]);
    if (!(sum > Rational(-(static_cast<long>(subset.size()) - 1)))) return subset;
  }
  return std::nullopt;
}

EvalReport f_tilde(const monodromy::MonodromyParams& p, const FtildeOptions& opt) {
  p.validate();
  if (auto bad = smallness_violation(p)) {
    std::ostringstream os;
    os << "f_tilde: smallness violated on subset {";
    for (size_t t = 0; t < bad->size(); ++t) os << (t ? "," : "") << (*bad)[t] + 1;
    os << "}";
    throw SmallnessError(os.str());
  }

  const int n = p.n();
  struct Piece {
    PhaseExponent phase;
    selberg::SelbergParams params;
  };
  std::vector<Piece> pieces;
  for (int k = 0; k <= n; ++k) {
    // (-1)^k prod_{i=k+1..n} e^{2 pi i m_i}  (1-based), as one exact exponent
    Rational lift(k);
    for (int i = k; i < n; ++i) lift += Rational(2) * p.m[i];
    for (const auto& eta : combinat::shuffles(k, n)) {
      Rational exponent = lift;
      for (const auto& [i, j] : combinat::inversions(eta)) exponent += p.pair(i, j);
      pieces.push_back({PhaseExponent(exponent), permuted_selberg(p, eta)});
    }
  }

  selberg::QuadratureOptions quad = opt.quad;
  quad.tol = std::min(quad.tol, opt.tol / std::pow(2.0, n));

  std::vector<EvalReport> piece_reports(pieces.size());
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1 || pieces.size() < 2) {
    for (size_t t = 0; t < pieces.size(); ++t)
      piece_reports[t] = selberg::selberg(pieces[t].params, quad);
  } else {
    std::vector<std::future<EvalReport>> futures;
    futures.reserve(pieces.size());
    for (size_t t = 0; t < pieces.size(); ++t)
      futures.push_back(std::async(std::launch::async,
                                   [&pieces, &quad, t] { return selberg::selberg(pieces[t].params, quad); }));
    for (size_t t = 0; t < pieces.size(); ++t) piece_reports[t] = futures[t].get();
  }

  EvalReport report;
  report.method = Method::quadrature;
  Complex total(0, 0);
  double err = 0;
  bool all_converged = true;
  for (size_t t = 0; t < pieces.size(); ++t) {
    total += phase_eval(pieces[t].phase) * piece_reports[t].value;
    err += piece_reports[t].abs_error_estimate;
    all_converged = all_converged && piece_reports[t].converged;
    report.terms_or_nodes += piece_reports[t].terms_or_nodes;
  }
  report.value = two_pi_i_pow_inverse(n) * total;
  report.abs_error_estimate = err / std::pow(kTwoPi, n);
  report.converged = all_converged;
  return report;
}

Complex f_tilde_n2_closed(const Rational& m1, const Rational& m2, const Rational& m12) {
  const Rational denom = m1 + m2 + m12 + Rational(2);
  if (denom.is_zero()) throw PoleError("f_tilde_n2_closed: prefactor pole");
  const Complex pref = two_pi_i_pow_inverse(2) / denom.to_double();
  const Complex one(1, 0);
  const Complex e2m1 = phase_eval(Rational(2) * m1);
  const Complex e2m2 = phase_eval(Rational(2) * m2);
  const Complex b2 = beta(m2.to_double() + 1.0, m12.to_double() + 1.0);
  const Complex b1 = beta(m1.to_double() + 1.0, m12.to_double() + 1.0);
  const Complex cross = phase_eval(Rational(2) * m2 + m12);
  return pref * ((one - e2m2) * b2 - cross * (one - e2m1) * b1);
}

Complex f_minus_n2_closed(const Rational& m1, const Rational& m2, const Rational& m12) {
  const Rational denom = m1 + m2 + m12 + Rational(2);
  if (denom.is_zero()) throw PoleError("f_minus_n2_closed: prefactor pole");
  // (e^{2 pi i m2}-1)/(2 pi i) * (e^{2 pi i (m1+m12)}-1)/(2 pi i) / denom
  //   * ( B(m2+1, m12+1) + sin(pi m1)/sin(pi (m1+m12)) * B(m1+1, m12+1) )
  const Complex f1 = expm1_2pii_over_2pii(m2);
  const Complex f2 = expm1_2pii_over_2pii(m1 + m12);
  const Complex b2 = beta(m2.to_double() + 1.0, m12.to_double() + 1.0);
  const Complex b1 = beta(m1.to_double() + 1.0, m12.to_double() + 1.0);
  const double s1 = sin_pi(m1.mod2().to_double());
  const double s2 = sin_pi((m1 + m12).mod2().to_double());
  if (s2 == 0.0) throw PoleError("f_minus_n2_closed: sine pole at integral m1+m12");
  return f1 * f2 / denom.to_double() * (b2 + (s1 / s2) * b1);
}

SymmetrizerCheckReport verify_symmetrizer(const monodromy::MonodromyParams& p,
                                          const SymmetrizerCheckOptions& opt) {
  p.validate();
  if (auto bad = smallness_violation(p))
    throw SmallnessError("verify_symmetrizer: smallness violated");
  if (auto bad = monodromy::convergence_violation(p)) {
    std::ostringstream os;
    os << "verify_symmetrizer: series convergence condition violated on subset {";
    for (size_t t = 0; t < bad->size(); ++t) os << (t ? "," : "") << (*bad)[t] + 1;
    os << "}";
    throw PreconditionError(os.str());
  }

  const int n = p.n();

  // Positions colored by themselves; q-matrix entries are the e^{i pi m_ij}.
  std::vector<std::vector<Rational>> qm(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) qm[i][j] = p.pair(i, j);
  const BraidingMatrix q{qm};
  Coloring identity_coloring(n);
  for (int i = 0; i < n; ++i) identity_coloring[i] = i;

  SymmetrizerCheckReport report;
  const EvalReport lhs = monodromy::f_minus(p, opt.series);
  report.lhs = lhs.value;
  report.lhs_error = lhs.abs_error_estimate;

  Complex rhs(0, 0);
  double rhs_err = 0;
  combinat::for_each_permutation(n, [&](const combinat::Permutation& sigma) {
    const PhaseExponent qs = combinat::braiding_factor(q, identity_coloring, sigma);
    const EvalReport piece = f_tilde(p.permuted_by_inverse(sigma.images()), opt.ftilde);
    const Complex term = phase_eval(qs) * piece.value;
    report.per_sigma[sigma] = term;
    rhs += term;
    rhs_err += piece.abs_error_estimate;
  });
  report.rhs = rhs;
  report.rhs_error = rhs_err;
  report.residual = std::abs(report.lhs - report.rhs);
  return report;
}

EvalReport torus_integral(const monodromy::MonodromyParams& p, const TorusOptions& opt) {
  p.validate();
  const int n = p.n();
  if (n > 2) throw PreconditionError("torus_integral: only n <= 2 supported");
  if (!p.hbar) throw PreconditionError("torus_integral: params carry no hbar");
  const std::vector<double>& hb = *p.hbar;
  if (n == 2 && !(hb[0] > hb[1]))
    throw PreconditionError("torus_integral: radii must decrease strictly");

  EvalReport report;
  report.method = Method::quadrature;

  const auto evaluate = [&](int nodes) -> Complex {
    const Quadrature1d gl = gauss_legendre(nodes, 0.0, kTwoPi);
    if (n == 1) {
      const double m1 = p.m[0].to_double();
      Complex acc(0, 0);
      for (int i = 0; i < nodes; ++i) {
        const double t = gl.nodes[i];
        acc += gl.weights[i] * std::polar(1.0, t * (1.0 + m1));
      }
      return std::pow(hb[0], m1) / kTwoPi * acc;
    }
    const double m1 = p.m[0].to_double();
    const double m2 = p.m[1].to_double();
    const double m12 = p.pair(0, 1).to_double();
    const double ratio = hb[1] / hb[0];  // < 1
    const double pref = std::pow(hb[0], m1 + m12) * std::pow(hb[1], m2) / (kTwoPi * kTwoPi);
    Complex acc(0, 0);
    for (int i = 0; i < nodes; ++i) {
      const double t1 = gl.nodes[i];
      for (int j = 0; j < nodes; ++j) {
        const double t2 = gl.nodes[j];
        const double d = t2 - t1;
        // phase and radius of 1 - (z2/z1), with |z2/z1| = ratio < 1
        const double theta = -std::atan(std::sin(d) / (1.0 / ratio - std::cos(d)));
        const double r = std::sqrt(1.0 + ratio * ratio - 2.0 * ratio * std::cos(d));
        const double arg = t1 * (1.0 + m1) + t2 * (1.0 + m2) + (t1 + theta) * m12;
        acc += gl.weights[i] * gl.weights[j] * std::pow(r, m12) * std::polar(1.0, arg);
      }
    }
    return pref * acc;
  };

  Complex prev(0, 0);
  bool have_prev = false;
  for (int nodes = 64; nodes <= opt.max_nodes_per_axis; nodes *= 2) {
    const Complex value = evaluate(nodes);
    report.terms_or_nodes += (n == 1) ? nodes : static_cast<std::int64_t>(nodes) * nodes;
    if (have_prev) {
      const double delta = std::abs(value - prev);
      if (delta <= opt.tol) {
        report.value = value;
        report.abs_error_estimate = delta;
        report.converged = true;
        return report;
      }
    }
    prev = value;
    have_prev = true;
  }
  report.value = prev;
  report.converged = false;
  report.abs_error_estimate = std::abs(prev);
  if (opt.throw_on_budget) throw BudgetError("torus_integral: node budget exhausted");
  return report;
}

Complex vanishing_coefficient(int n, const Rational& m_i, const Rational& m_ij) {
  Complex total(0, 0);
  for (int k = 0; k <= n; ++k) {
    Rational lift(k);  // (-1)^k as e^{i pi k}
    lift += Rational(2) * Rational(n - k) * m_i;
    for (const auto& eta : combinat::shuffles(k, n)) {
      const Rational exponent = lift + m_ij * Rational(combinat::length(eta));
      total += phase_eval(PhaseExponent(exponent));
    }
  }
  return two_pi_i_pow_inverse(n) * total;
}

Complex vanishing_sum_generic(int n, const Complex& q, const Complex& e_2pi_mi) {
  Complex total(0, 0);
  for (int k = 0; k <= n; ++k) {
    Complex lift = (k % 2 == 0) ? Complex(1, 0) : Complex(-1, 0);
    for (int i = k; i < n; ++i) lift *= e_2pi_mi;
    for (const auto& eta : combinat::shuffles(k, n)) {
      Complex qpow(1, 0);
      const long l = combinat::length(eta);
      for (long t = 0; t < l; ++t) qpow *= q;
      total += lift * qpow;
    }
  }
  return two_pi_i_pow_inverse(n) * total;
}

}  // namespace screenlab::symformula
