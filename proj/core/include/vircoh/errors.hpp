#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vircoh {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  IndexOutOfRange,
  OddDegree,
  NotGraded,
  NotCommutative,
  NonAssociative,
  NoUnit,
  DegeneratePairing,
  ModelMismatch,
  NotAGroup,
  TooLarge,
  MissingPushforward,
  MissingPairData,
  NotGStable,
  NotDerivable,
  ProductEscapesSubspace,
  NonCommutative,
  DegreeMismatch,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vircoh
