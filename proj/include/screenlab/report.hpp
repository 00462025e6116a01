#ifndef SCREENLAB_REPORT_HPP
#define SCREENLAB_REPORT_HPP

#include <cstdint>

#include "screenlab/numeric.hpp"

namespace screenlab {

enum class Method { series, closed_form, quadrature, monte_carlo };

/// Result of a numerical evaluation together with its accuracy accounting.
/// converged == false is the caller-visible warning channel.
struct EvalReport {
  Complex value{0.0, 0.0};
  double abs_error_estimate = 0.0;
  std::int64_t terms_or_nodes = 0;
  bool converged = false;
  Method method = Method::series;
};

}  // namespace screenlab

#endif
