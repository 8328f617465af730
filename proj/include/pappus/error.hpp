#pragma once

#include <stdexcept>
#include <string>

namespace pappus {

enum class Errc {
  ZeroVector,
  NonFinite,
  EqualPoints,
  EqualLines,
  FieldMismatch,
  SingularMap,
  KernelHit,
  DegenerateFrame,
  IllConditioned,
  NotEscaping,
  TooShort,
  DegenerateBox,
  BadLetter,
  MarkMismatch,
  DegenerateSeed,
  NotLoxodromic,
  EmptyApprox,
  ProbeTooClose,
  TooFew,
  PrecisionCeiling,
  Parse,
  InvalidArgument,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  explicit Error(Errc code) : std::runtime_error(to_string(code)), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pappus
