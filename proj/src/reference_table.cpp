#include "screenlab/reference_table.hpp"

namespace screenlab::reference {

namespace {

Rational rat(long n, long d) { return Rational(n, d); }

std::vector<Row> build() {
  std::vector<Row> rows;
  const auto fmono = [&](Rational m1, Rational m2, Rational m12, double re, double im,
                         bool zero = false) {
    rows.push_back({"fmono", m1, m2, m12, Complex(re, im), zero});
  };
  const auto ftilde = [&](Rational m1, Rational m2, Rational m12, double re, double im,
                          bool zero = false) {
    rows.push_back({"ftilde", m1, m2, m12, Complex(re, im), zero});
  };

  fmono(rat(1, 3), rat(1, 5), rat(1, 7), -0.0148, 0.0240);
  ftilde(rat(1, 3), rat(1, 5), rat(1, 7), -0.0007, 0.0161);
  ftilde(rat(1, 5), rat(1, 3), rat(1, 7), -0.0093, 0.0132);

  fmono(rat(1, 7), rat(1, 7), rat(1, 1), 0.0, 0.0, true);
  ftilde(rat(1, 7), rat(1, 7), rat(1, 1), -0.0038, 0.0030);

  fmono(rat(8, 7), rat(1, 7), rat(1, 1), 0.0007, 0.0009);
  ftilde(rat(8, 7), rat(1, 7), rat(1, 1), -0.0016, 0.0020);
  ftilde(rat(1, 7), rat(8, 7), rat(1, 1), -0.0023, 0.0011);

  fmono(rat(1, 7), rat(8, 7), rat(1, 1), -0.0007, -0.0009);

  fmono(rat(-1, 3), rat(-1, 3), rat(2, 3), 0.0, 0.0, true);
  ftilde(rat(-1, 3), rat(-1, 3), rat(2, 3), 0.0, 0.0, true);

  fmono(rat(2, 3), rat(-1, 3), rat(2, 3), -0.0185, 0.0);
  ftilde(rat(2, 3), rat(-1, 3), rat(2, 3), -0.0092, -0.0053);
  ftilde(rat(-1, 3), rat(2, 3), rat(2, 3), 0.0092, 0.0053);

  fmono(rat(-1, 3), rat(2, 3), rat(2, 3), 0.0185, 0.0);
  return rows;
}

}  // namespace

const std::vector<Row>& rows() {
  static const std::vector<Row> table = build();
  return table;
}

std::vector<RowResult> recompute(int jobs) {
  std::vector<RowResult> results;
  for (const Row& row : rows()) {
    monodromy::MonodromyParams p = monodromy::MonodromyParams::n2(row.m1, row.m2, row.m12);
    Complex observed;
    if (row.quantity == "fmono") {
      monodromy::SeriesOptions opt;
      opt.tol = 1e-7;
      opt.shell_cap = 50'000;
      observed = monodromy::f_minus(p, opt).value;
    } else {
      symformula::FtildeOptions opt;
      opt.tol = 1e-8;
      opt.jobs = jobs;
      observed = symformula::f_tilde(p, opt).value;
    }
    const double residual = std::abs(observed - row.expected);
    const double threshold = row.exact_zero ? 1e-6 : 5e-4;
    const bool pass = row.exact_zero ? (std::abs(observed) < threshold)
                                     : (residual <= threshold);
    results.push_back({row, observed, residual, pass});
  }
  return results;
}

}  // namespace screenlab::reference
