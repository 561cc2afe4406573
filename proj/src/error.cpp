#include "pellforms/error.hpp"

namespace pellforms {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::MixedFields: return "MixedFields";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::NotCoprimeToDiscriminant: return "NotCoprimeToDiscriminant";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DenominatorCollapse: return "DenominatorCollapse";
    case ErrorKind::MixedDiscriminants: return "MixedDiscriminants";
    case ErrorKind::NotOnConic: return "NotOnConic";
    case ErrorKind::NotOnTorsor: return "NotOnTorsor";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::InvalidClassRep: return "InvalidClassRep";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace pellforms
