#ifndef NCTORUS_ERRORS_HPP
#define NCTORUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nct {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ThetaMismatchError : Error {
  using Error::Error;
};

struct PositivityError : Error {
  using Error::Error;
};

// Thrown when an iteration fails to reach the requested tolerance; carries
// the last achieved residual.
struct ConvergenceError : Error {
  double residual;
  ConvergenceError(const std::string& what, double r) : Error(what), residual(r) {}
};

// An inner derivation (or its image under a derivation/bracket) is not in
// the span a MuMap is defined on.
struct SpanError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace nct

#endif
