#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace paretolab {

enum class ErrorKind {
  OutOfRange,
  NonFinite,
  DegenerateDiscriminant,
  NoRoot,
  NoNegativeRoot,
  AlignmentMismatch,
  EmptyInterior,
  ResourceLimit,
  StationarityUnavailable,
  NonPositiveSample,
  DegenerateSample,
  EmptyWindow,
  NonPositiveDensity,
  NotDissipative,
  InsufficientData,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

// True for failures of the mathematics rather than of the input.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace paretolab
