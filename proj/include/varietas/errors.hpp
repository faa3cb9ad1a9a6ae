#ifndef VARIETAS_ERRORS_HPP
#define VARIETAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace varietas {

struct Error : std::runtime_error {
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct UnmappedVariable : Error {
  explicit UnmappedVariable(int index)
      : Error("no assignment for variable x" + std::to_string(index)) {}
};

struct UnknownSymbol : Error {
  explicit UnknownSymbol(const std::string &name)
      : Error("unknown function symbol: " + name) {}
};

struct ArityMismatch : Error {
  ArityMismatch(const std::string &name, int expected, int got)
      : Error("symbol " + name + " expects " + std::to_string(expected) +
              " arguments, got " + std::to_string(got)) {}
};

struct MissingInterpretation : Error {
  explicit MissingInterpretation(const std::string &what)
      : Error("missing interpretation: " + what) {}
};

// Raised by extend_with_free when a factor carrier cannot accommodate
// the requested number of coordinate-fresh tuples.
struct CarrierTooSmall : Error {
  explicit CarrierTooSmall(const std::string &msg) : Error(msg) {}
};

// Internal consistency failure of the stage-wise model builders.
struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string &msg) : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string &msg) : Error("parse error: " + msg) {}
};

} // namespace varietas

#endif
