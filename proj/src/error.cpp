#include "pappus/error.hpp"

namespace pappus {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NonFinite: return "NonFinite";
    case Errc::EqualPoints: return "EqualPoints";
    case Errc::EqualLines: return "EqualLines";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::SingularMap: return "SingularMap";
    case Errc::KernelHit: return "KernelHit";
    case Errc::DegenerateFrame: return "DegenerateFrame";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::NotEscaping: return "NotEscaping";
    case Errc::TooShort: return "TooShort";
    case Errc::DegenerateBox: return "DegenerateBox";
    case Errc::BadLetter: return "BadLetter";
    case Errc::MarkMismatch: return "MarkMismatch";
    case Errc::DegenerateSeed: return "DegenerateSeed";
    case Errc::NotLoxodromic: return "NotLoxodromic";
    case Errc::EmptyApprox: return "EmptyApprox";
    case Errc::ProbeTooClose: return "ProbeTooClose";
    case Errc::TooFew: return "TooFew";
    case Errc::PrecisionCeiling: return "PrecisionCeiling";
    case Errc::Parse: return "Parse";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace pappus
