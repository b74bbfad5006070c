#ifndef LEETOR_ERRORS_HPP
#define LEETOR_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace leetor {

enum class ErrorKind {
  MalformedPd,
  EdgeCountViolation,
  InconsistentOrientation,
  NonPlanar,
  MultiComponent,
  SizeLimitExceeded,
  VertexMismatch,
  NonMonomialEntry,
  NotACycleAfterMultiplication,
  CeilingRelationViolated,
  FreePartMalformed,
  BoundViolation,
  WrongCrossingSign,
  IdentityFailed,
  LemmaViolated,
  UnknownKnot,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedPd: return "MalformedPd";
    case ErrorKind::EdgeCountViolation: return "EdgeCountViolation";
    case ErrorKind::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorKind::NonPlanar: return "NonPlanar";
    case ErrorKind::MultiComponent: return "MultiComponent";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::VertexMismatch: return "VertexMismatch";
    case ErrorKind::NonMonomialEntry: return "NonMonomialEntry";
    case ErrorKind::NotACycleAfterMultiplication: return "NotACycleAfterMultiplication";
    case ErrorKind::CeilingRelationViolated: return "CeilingRelationViolated";
    case ErrorKind::FreePartMalformed: return "FreePartMalformed";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::WrongCrossingSign: return "WrongCrossingSign";
    case ErrorKind::IdentityFailed: return "IdentityFailed";
    case ErrorKind::LemmaViolated: return "LemmaViolated";
    case ErrorKind::UnknownKnot: return "UnknownKnot";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace leetor

#endif  // LEETOR_ERRORS_HPP
