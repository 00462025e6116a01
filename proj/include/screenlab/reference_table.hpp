#ifndef SCREENLAB_REFERENCE_TABLE_HPP
#define SCREENLAB_REFERENCE_TABLE_HPP

#include <string>
#include <vector>

#include "screenlab/monodromy.hpp"
#include "screenlab/symformula.hpp"

namespace screenlab::reference {

/// One row of the bundled n = 2 reference table: either a quantum monodromy
/// number F- or a reduced number F~-, with the published 4-decimal value.
struct Row {
  std::string quantity;  // "fmono" or "ftilde"
  Rational m1, m2, m12;
  Complex expected;
  bool exact_zero;  // rows whose value vanishes identically
};

const std::vector<Row>& rows();

struct RowResult {
  Row row;
  Complex observed;
  double residual;
  bool pass;
};

/// Recomputes every row; pass thresholds are 5e-4 for printed values and
/// 1e-6 for the exact-zero rows.
std::vector<RowResult> recompute(int jobs = 1);

}  // namespace screenlab::reference

#endif
