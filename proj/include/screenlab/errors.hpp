#ifndef SCREENLAB_ERRORS_HPP
#define SCREENLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace screenlab {

// Base class for all errors raised by the library. Subclasses distinguish
// the failure modes that callers are expected to branch on (CLI exit codes,
// test assertions on error paths).
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A parameter sits exactly on a pole of a Gamma/Beta closed form.
struct PoleError : Error {
  explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Input violates a documented precondition (divergent Selberg parameters,
// fully fractured arguments passed to an integral-case formula, ...).
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Requested enumeration or matrix exceeds the configured size cap.
struct SizeLimitError : Error {
  explicit SizeLimitError(const std::string& msg) : Error(msg) {}
};

// Full S_n table requested beyond the factorial cap.
struct FactorialLimitError : Error {
  explicit FactorialLimitError(const std::string& msg) : Error(msg) {}
};

// Singular values cluster within a decade of the rank threshold, so the
// numeric kernel dimension would be a guess.
struct IllConditionedError : Error {
  explicit IllConditionedError(const std::string& msg) : Error(msg) {}
};

// Series terms grow instead of decaying.
struct DivergedError : Error {
  explicit DivergedError(const std::string& msg) : Error(msg) {}
};

// Shell cap reached before the partial sums stabilized.
struct ShellCapError : Error {
  explicit ShellCapError(const std::string& msg) : Error(msg) {}
};

// Node/sample budget exhausted before the requested tolerance.
struct BudgetError : Error {
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// A fractional-Laurent exponent left the requested window.
struct WindowOverflowError : Error {
  explicit WindowOverflowError(const std::string& msg) : Error(msg) {}
};

// A degree-truncated screening tail is not manifestly finite.
struct NonConvergentError : Error {
  explicit NonConvergentError(const std::string& msg) : Error(msg) {}
};

// The m_{ij} violate the smallness inequalities; message names the subset.
struct SmallnessError : Error {
  explicit SmallnessError(const std::string& msg) : Error(msg) {}
};

}  // namespace screenlab

#endif
