#include "vircoh/errors.hpp"

namespace vircoh {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::OddDegree: return "OddDegree";
    case ErrorCode::NotGraded: return "NotGraded";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::NoUnit: return "NoUnit";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::MissingPushforward: return "MissingPushforward";
    case ErrorCode::MissingPairData: return "MissingPairData";
    case ErrorCode::NotGStable: return "NotGStable";
    case ErrorCode::NotDerivable: return "NotDerivable";
    case ErrorCode::ProductEscapesSubspace: return "ProductEscapesSubspace";
    case ErrorCode::NonCommutative: return "NonCommutative";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace vircoh
