#pragma once

#include <stdexcept>
#include <string>

namespace fqlab {

/// Error categories surfaced by the library. Each maps to one precondition
/// or resource failure; the CLI maps them onto exit codes.
enum class Errc {
  NotPrime,
  NotPrimePower,
  DegreeOutOfRange,
  Overflow,
  FieldMismatch,
  DivisionByZero,
  EvenCharacteristic,
  NotMonic,
  Constant,
  DegreeTooSmall,
  NotSquarefree,
  ConstantPolynomial,
  EmptyGeneratorList,
  EmptyPartsList,
  BudgetExceeded,
  EmptySet,
  GridTooSmall,
  InvalidArgument,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fqlab
