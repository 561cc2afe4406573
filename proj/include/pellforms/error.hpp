#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pellforms {

enum class ErrorKind {
  NotInvertible,
  MixedFields,
  DivisionByZero,
  NotFundamental,
  NotCoprimeToDiscriminant,
  NotUnimodular,
  NotPrimitive,
  TooLarge,
  DenominatorCollapse,
  MixedDiscriminants,
  NotOnConic,
  NotOnTorsor,
  NotIntegral,
  InvalidClassRep,
  ParseError,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// Domain error raised by every module. The CLI maps these to exit code 1
/// and prints `error_name(kind())`.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pellforms
