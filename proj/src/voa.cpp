#include "screenlab/voa.hpp"

#include <functional>
#include <numeric>
#include <sstream>

namespace screenlab::voa {

LatticePoint lattice_add(const LatticePoint& a, const LatticePoint& b) {
  if (a.size() != b.size()) throw PreconditionError("lattice_add: rank mismatch");
  LatticePoint out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

LatticePoint lattice_negate(const LatticePoint& a) {
  LatticePoint out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

LatticePoint lattice_zero(int rank) { return LatticePoint(rank, Rational(0)); }

LatticePoint lattice_basis(int rank, int i) {
  LatticePoint p(rank, Rational(0));
  p[i] = Rational(1);
  return p;
}

LatticePoint lattice_scale(const Rational& c, const LatticePoint& a) {
  LatticePoint out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

Lattice::Lattice(std::vector<std::vector<Rational>> gram) : gram_(std::move(gram)) {
  const int r = static_cast<int>(gram_.size());
  if (r < 1) throw PreconditionError("Lattice: empty Gram matrix");
  long lcm = 1;
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(gram_[i].size()) != r)
      throw PreconditionError("Lattice: Gram matrix not square");
    for (int j = 0; j < r; ++j) {
      if (gram_[i][j] != gram_[j][i])
        throw PreconditionError("Lattice: Gram matrix not symmetric");
      if (!gram_[i][j].den().fits_slong_p())
        throw PreconditionError("Lattice: denominator out of range");
      const long d = gram_[i][j].den().get_si();
      lcm = std::lcm(lcm, d);
    }
  }
  n_ = lcm;
}

Rational Lattice::inner(const LatticePoint& a, const LatticePoint& b) const {
  if (static_cast<int>(a.size()) != rank() || static_cast<int>(b.size()) != rank())
    throw PreconditionError("Lattice::inner: rank mismatch");
  Rational s(0);
  for (int i = 0; i < rank(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < rank(); ++j) {
      if (b[j].is_zero()) continue;
      s += a[i] * gram_[i][j] * b[j];
    }
  }
  return s;
}

DiffMonomial DiffMonomial::generator(int dir, int order, int mult) {
  if (order < 1) throw PreconditionError("DiffMonomial: derivative order must be >= 1");
  DiffMonomial m;
  m.entries_.push_back({dir, order, mult});
  return m;
}

DiffMonomial DiffMonomial::times(const DiffMonomial& other) const {
  DiffMonomial out = *this;
  for (const auto& e : other.entries_)
    out = out.with_multiplicity_delta(e.dir, e.order, e.mult);
  return out;
}

DiffMonomial DiffMonomial::with_multiplicity_delta(int dir, int order, int delta) const {
  DiffMonomial out;
  bool placed = false;
  for (const auto& e : entries_) {
    if (e.dir == dir && e.order == order) {
      const int m = e.mult + delta;
      if (m < 0) throw PreconditionError("DiffMonomial: negative multiplicity");
      if (m > 0) out.entries_.push_back({dir, order, m});
      placed = true;
    } else {
      out.entries_.push_back(e);
    }
  }
  if (!placed) {
    if (delta < 0) throw PreconditionError("DiffMonomial: negative multiplicity");
    if (delta > 0) out.entries_.push_back({dir, order, delta});
  }
  std::sort(out.entries_.begin(), out.entries_.end(),
            [](const Entry& a, const Entry& b) {
              return std::pair(a.dir, a.order) < std::pair(b.dir, b.order);
            });
  return out;
}

int DiffMonomial::multiplicity(int dir, int order) const {
  for (const auto& e : entries_)
    if (e.dir == dir && e.order == order) return e.mult;
  return 0;
}

VoaElement<Complex> screening_product_formula(const Lattice& lattice,
                                              const std::vector<LatticePoint>& alphas,
                                              const LatticePoint& lambda, int truncation,
                                              const monodromy::SeriesOptions& series) {
  if (truncation == kUnbounded)
    throw NonConvergentError("screening_product_formula: needs finite truncation");
  const int n = static_cast<int>(alphas.size());
  const int rank = lattice.rank();

  monodromy::MonodromyParams base;
  base.m.resize(n);
  for (int i = 0; i < n; ++i) base.m[i] = lattice.inner(alphas[i], lambda);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      base.mm[{i, j}] = lattice.inner(alphas[i], alphas[j]);

  LatticePoint target = lambda;
  for (const auto& a : alphas) target = lattice_add(target, a);

  // P_{alpha_i, k} tables up to the truncation degree.
  std::vector<std::vector<VoaElement<Complex>>> ptab(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= truncation; ++k)
      ptab[i].push_back(diff_poly<Complex>(alphas[i], k, truncation));

  VoaElement<Complex> out(rank, truncation);
  std::vector<int> k(n, 0);
  while (true) {
    int total = 0;
    for (int v : k) total += v;
    if (total <= truncation) {
      monodromy::MonodromyParams shifted = base;
      for (int i = 0; i < n; ++i) shifted.m[i] += Rational(k[i]);
      const EvalReport f = monodromy::f_minus(shifted, series);
      if (f.value != Complex(0, 0)) {
        VoaElement<Complex> hopf = exp_phi<Complex>(target, truncation);
        for (int i = 0; i < n; ++i) hopf = hopf.times(ptab[i][k[i]]);
        out += hopf.scaled(f.value);
      }
    }
    // next multi-index with entries bounded by the truncation
    int i = 0;
    while (i < n && k[i] == truncation) k[i++] = 0;
    if (i == n) break;
    ++k[i];
  }
  return out;
}

namespace {

// One residue family res(base + s) with the integrality of base decided
// once; base is shifted by integers only.
struct ResFamily {
  bool is_int = false;
  long base_int = 0;
  double base_dbl = 0;
  Complex numerator;  // (e^{2 pi i base} - 1)/(2 pi i)

  static ResFamily of(const Rational& base) {
    ResFamily f;
    f.is_int = base.is_integer();
    if (f.is_int) f.base_int = base.to_long();
    f.base_dbl = base.to_double();
    f.numerator = expm1_2pii_over_2pii(base);
    return f;
  }

  Complex at(long shift) const {
    if (is_int) return (base_int + shift == -1) ? Complex(1, 0) : Complex(0, 0);
    return numerator / (1.0 + base_dbl + static_cast<double>(shift));
  }
};

int default_tail_terms(int n) { return n <= 2 ? 20'000 : 700; }

// Staged evaluation of zeta_{a_0} ... zeta_{a_{n-1}} e^{phi_lambda}: the
// state after each screening is a numeric tensor over the retained P-index
// of every screening applied so far; absorbed indices are summed out
// against the binomial pairing weights of the grouplike argument.
VoaElement<Complex> staged_screening_product(const Lattice& lattice,
                                             const std::vector<LatticePoint>& alphas,
                                             const LatticePoint& lambda,
                                             const Complex& input_coeff, int truncation,
                                             int tail_terms) {
  const int n = static_cast<int>(alphas.size());
  const int rank = lattice.rank();
  const long K = tail_terms;

  LatticePoint target = lambda;
  for (const auto& a : alphas) target = lattice_add(target, a);

  // mu_j = lambda + sum_{i > j} alpha_i; e_j = (alpha_j, mu_j)
  std::vector<Rational> e(n, Rational(0));
  {
    LatticePoint mu = lambda;
    for (int j = n - 1; j >= 0; --j) {
      e[j] = lattice.inner(alphas[j], mu);
      mu = lattice_add(mu, alphas[j]);
    }
  }

  // absorbed-index weights: omega_{j,i}(k) = (-1)^k C((alpha_j, alpha_i), k)
  std::vector<std::vector<std::vector<double>>> omega(n);
  for (int j = 0; j < n; ++j) {
    omega[j].resize(n);
    for (int i = j + 1; i < n; ++i) {
      const double m = lattice.inner(alphas[j], alphas[i]).to_double();
      std::vector<double> w(K + 1);
      double c = 1.0;
      for (long k = 0; k <= K; ++k) {
        w[k] = c;
        c *= -(m - static_cast<double>(k)) / static_cast<double>(k + 1);
      }
      omega[j][i] = std::move(w);
    }
  }

  // state over retained indices of screenings j+1..n-1, flattened with the
  // last-applied screening's index fastest
  std::vector<Complex> state;
  {
    const ResFamily fam = ResFamily::of(e[n - 1]);
    state.resize(K + 1);
    for (long l = 0; l <= K; ++l) state[l] = fam.at(l);
  }

  for (int j = n - 2; j >= 0; --j) {
    const int r = n - 1 - j;  // factors already present
    const ResFamily fam = ResFamily::of(e[j]);
    const bool last_stage = (j == 0);
    const long out_bound = last_stage ? truncation : K;

    // residue lookup over the full shift range
    std::vector<Complex> res_at(4 * K + 1);
    for (long s = -2 * K; s <= 2 * K; ++s) res_at[s + 2 * K] = fam.at(s);

    // new state has r+1 indices: (a_j, a_{j+1}, ..., a_{n-1})
    const size_t new_extent = static_cast<size_t>(out_bound + 1);
    size_t new_size = new_extent;
    for (int t = 0; t < r; ++t) new_size *= new_extent;
    std::vector<Complex> next(new_size, Complex(0, 0));

    if (r == 1) {
      const auto& w = omega[j][j + 1];
      for (long a1 = 0; a1 <= out_bound; ++a1)
        for (long aj = 0; aj <= out_bound; ++aj) {
          Complex acc(0, 0);
          for (long kp = 0; a1 + kp <= K; ++kp)
            acc += state[a1 + kp] * w[kp] * res_at[aj - kp + 2 * K];
          next[static_cast<size_t>(aj) * new_extent + a1] = acc;
        }
    } else if (r == 2) {
      const auto& w1 = omega[j][j + 1];
      const auto& w2 = omega[j][j + 2];
      for (long a1 = 0; a1 <= out_bound; ++a1)
        for (long a2 = 0; a2 <= out_bound; ++a2)
          for (long aj = 0; aj <= out_bound; ++aj) {
            Complex acc(0, 0);
            for (long k1 = 0; a1 + k1 <= K; ++k1) {
              Complex inner(0, 0);
              for (long k2 = 0; a2 + k2 <= K; ++k2)
                inner += state[static_cast<size_t>(a1 + k1) * (K + 1) + (a2 + k2)] *
                         w2[k2] * res_at[aj - k1 - k2 + 2 * K];
              acc += inner * w1[k1];
            }
            next[(static_cast<size_t>(aj) * new_extent + a1) * new_extent + a2] = acc;
          }
    } else {
      throw SizeLimitError("screening_product_direct: staged route supports n <= 3");
    }
    state = std::move(next);
    if (last_stage) {
      // assemble sum over tuples with total degree <= truncation
      VoaElement<Complex> out(rank, truncation);
      std::vector<std::vector<VoaElement<Complex>>> ptab(n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k <= truncation; ++k)
          ptab[i].push_back(diff_poly<Complex>(alphas[i], k, truncation));

      std::vector<long> tup(n, 0);
      while (true) {
        long total = 0;
        for (long v : tup) total += v;
        if (total <= truncation) {
          size_t flat = 0;
          for (int t = 0; t < n; ++t) flat = flat * new_extent + static_cast<size_t>(tup[t]);
          const Complex coeff = state[flat] * input_coeff;
          if (coeff != Complex(0, 0)) {
            VoaElement<Complex> hopf = exp_phi<Complex>(target, truncation);
            for (int i = 0; i < n; ++i) hopf = hopf.times(ptab[i][tup[i]]);
            out += hopf.scaled(coeff);
          }
        }
        int t = n - 1;
        while (t >= 0 && tup[t] == truncation) tup[t--] = 0;
        if (t < 0) break;
        ++tup[t];
      }
      return out;
    }
  }

  // n == 1: assemble directly from the 1-d state
  VoaElement<Complex> out(rank, truncation);
  for (long l = 0; l <= std::min<long>(K, truncation); ++l) {
    const Complex coeff = state[l] * input_coeff;
    if (coeff == Complex(0, 0)) continue;
    out += diff_poly<Complex>(alphas[0], static_cast<int>(l), truncation)
               .times(exp_phi<Complex>(target, truncation))
               .scaled(coeff);
  }
  return out;
}

}  // namespace

VoaElement<Complex> screening_product_direct(const Lattice& lattice,
                                             const std::vector<LatticePoint>& alphas,
                                             const VoaElement<Complex>& v, int truncation,
                                             const DirectOptions& options) {
  if (truncation == kUnbounded)
    throw NonConvergentError("screening_product_direct: needs finite truncation");
  const int n = static_cast<int>(alphas.size());
  if (n == 0) return v.truncated(truncation);

  const bool pure_exponential =
      v.terms().size() == 1 && v.terms().begin()->first.first.is_one();
  if (!pure_exponential || n > 3)
    return screening_product_iterated(lattice, alphas, v, truncation);

  const LatticePoint lambda = v.terms().begin()->first.second;
  const Complex coeff = v.terms().begin()->second;
  const int tail =
      options.tail_terms > 0 ? options.tail_terms : default_tail_terms(n);
  return staged_screening_product(lattice, alphas, lambda, coeff, truncation, tail);
}

bool screening_smallness(const Lattice& lattice, const std::vector<LatticePoint>& alphas) {
  for (const auto& a : alphas)
    if (lattice.norm(a) > Rational(1)) return false;
  return true;
}

double check_nichols_on_vector(const Lattice& lattice,
                               const std::vector<LatticePoint>& alphas,
                               const nichols::WordCombination& relation,
                               const LatticePoint& lambda, int truncation) {
  VoaElement<Complex> total(lattice.rank(), truncation);
  for (const auto& [word, coeff] : relation.terms) {
    std::vector<LatticePoint> seq;
    seq.reserve(word.size());
    for (int color : word) {
      if (color < 0 || color >= static_cast<int>(alphas.size()))
        throw PreconditionError("check_nichols_on_vector: color out of range");
      seq.push_back(alphas[color]);
    }
    const VoaElement<Complex> applied = screening_product_direct(
        lattice, seq, exp_phi<Complex>(lambda, truncation), truncation);
    total += applied.scaled(coeff);
  }
  return total.max_abs_coefficient();
}

namespace {

using Element = VoaElement<Rational>;

std::vector<DiffMonomial> monomials_up_to_degree(int rank, int max_degree) {
  // depth-first over generator kinds (dir, order), order contributes itself
  std::vector<DiffMonomial> out;
  std::vector<std::pair<int, int>> kinds;
  for (int dir = 0; dir < rank; ++dir)
    for (int order = 1; order <= max_degree; ++order) kinds.emplace_back(dir, order);
  std::function<void(size_t, int, DiffMonomial)> rec = [&](size_t idx, int left,
                                                           DiffMonomial acc) {
    out.push_back(acc);
    for (size_t t = idx; t < kinds.size(); ++t) {
      const auto [dir, order] = kinds[t];
      if (order > left) continue;
      rec(t + 1, left - order,
          acc.with_multiplicity_delta(dir, order, +1));
      // higher multiplicities of the same kind
      int used = order;
      DiffMonomial cur = acc.with_multiplicity_delta(dir, order, +1);
      while (used + order <= left) {
        cur = cur.with_multiplicity_delta(dir, order, +1);
        used += order;
        rec(t + 1, left - used, cur);
      }
    }
  };
  rec(0, max_degree, DiffMonomial::one());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<LatticePoint> lattice_box(int rank, int radius) {
  std::vector<LatticePoint> points;
  std::vector<int> c(rank, -radius);
  while (true) {
    LatticePoint p(rank);
    for (int i = 0; i < rank; ++i) p[i] = Rational(c[i]);
    points.push_back(p);
    int i = 0;
    while (i < rank && c[i] == radius) c[i++] = -radius;
    if (i == rank) break;
    ++c[i];
  }
  return points;
}

}  // namespace

TrivialLevelReport trivial_level_relations(RootPreset preset, int truncation) {
  const Lattice lattice = (preset == RootPreset::sl2) ? Lattice::sl2() : Lattice::sl3();
  const int rank = lattice.rank();

  std::vector<LatticePoint> roots;
  if (preset == RootPreset::sl2) {
    roots = {lattice_basis(1, 0), lattice_negate(lattice_basis(1, 0))};
  } else {
    const LatticePoint a1 = lattice_basis(2, 0);
    const LatticePoint a2 = lattice_basis(2, 1);
    const LatticePoint a12 = lattice_add(a1, a2);
    roots = {a1, a2, a12, lattice_negate(a1), lattice_negate(a2), lattice_negate(a12)};
  }

  // Basis vectors: monomials of degree <= truncation over lattice points in
  // a radius-1 coordinate box. All operations are exact and finite here
  // (integral pairings), so identities are checked without truncation.
  std::vector<Element> basis;
  for (const auto& mono : monomials_up_to_degree(rank, truncation))
    for (const auto& point : lattice_box(rank, 1)) {
      Element v(rank);
      v.add(mono, point, Rational(1));
      basis.push_back(v);
    }

  TrivialLevelReport report;
  const auto record = [&](const std::string& name, bool ok) {
    report.checks.push_back({name, ok});
    report.all_ok = report.all_ok && ok;
  };
  const auto zeta = [&](const LatticePoint& a, const Element& v) {
    return zemlja(lattice, a, v);
  };

  for (size_t ia = 0; ia < roots.size(); ++ia) {
    for (size_t ib = 0; ib < roots.size(); ++ib) {
      const auto& a = roots[ia];
      const auto& b = roots[ib];
      const Rational ip = lattice.inner(a, b);
      std::ostringstream name;
      bool ok = true;
      if (ip == Rational(-1)) {
        name << "anticommutator [z_" << ia << ", z_" << ib << "]+ = z_(a+b)";
        for (const auto& v : basis) {
          Element lhs = zeta(a, zeta(b, v));
          lhs += zeta(b, zeta(a, v));
          if (!(lhs == zeta(lattice_add(a, b), v))) {
            ok = false;
            break;
          }
        }
      } else if (ip == Rational(0) || ip == Rational(1)) {
        const bool anti = (ip == Rational(1));
        name << (anti ? "anticommutator" : "commutator") << " [z_" << ia << ", z_" << ib
             << "] = 0";
        for (const auto& v : basis) {
          Element lhs = zeta(a, zeta(b, v));
          const Element rhs = zeta(b, zeta(a, v));
          lhs = anti ? (lhs - rhs.scaled(Rational(-1))) : (lhs - rhs);
          if (!lhs.is_zero()) {
            ok = false;
            break;
          }
        }
      } else if (ip == Rational(-2) && b == lattice_negate(a)) {
        name << "commutator [z_" << ia << ", z_" << ib << "] = yer";
        for (const auto& v : basis) {
          Element lhs = zeta(a, zeta(b, v)) - zeta(b, zeta(a, v));
          if (!(lhs == yer(lattice, a, v))) {
            ok = false;
            break;
          }
        }
      } else {
        continue;  // (a,a) = 2 diagonal and other cases are not Serre checks
      }
      record(name.str(), ok);
    }
  }

  // [yer_lambda, z_a] = (lambda, a) z_a for the basis weights.
  for (int l = 0; l < rank; ++l) {
    const LatticePoint lambda = lattice_basis(rank, l);
    for (size_t ia = 0; ia < roots.size(); ++ia) {
      const auto& a = roots[ia];
      bool ok = true;
      for (const auto& v : basis) {
        Element lhs = yer(lattice, lambda, zeta(a, v)) - zeta(a, yer(lattice, lambda, v));
        const Element rhs = zeta(a, v).scaled(lattice.inner(lambda, a));
        if (!(lhs == rhs)) {
          ok = false;
          break;
        }
      }
      std::ostringstream name;
      name << "[yer_e" << l << ", z_" << ia << "] = (lambda,a) z_" << ia;
      record(name.str(), ok);
    }
  }
  return report;
}

}  // namespace screenlab::voa
