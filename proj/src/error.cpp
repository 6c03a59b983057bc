#include "paretolab/error.hpp"

namespace paretolab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DegenerateDiscriminant: return "DegenerateDiscriminant";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::NoNegativeRoot: return "NoNegativeRoot";
    case ErrorKind::AlignmentMismatch: return "AlignmentMismatch";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::StationarityUnavailable: return "StationarityUnavailable";
    case ErrorKind::NonPositiveSample: return "NonPositiveSample";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorKind::NotDissipative: return "NotDissipative";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateDiscriminant:
    case ErrorKind::NoRoot:
    case ErrorKind::NoNegativeRoot:
    case ErrorKind::StationarityUnavailable:
    case ErrorKind::DegenerateSample:
    case ErrorKind::InsufficientData:
    case ErrorKind::ResourceLimit:
      return true;
    default:
      return false;
  }
}

}  // namespace paretolab
