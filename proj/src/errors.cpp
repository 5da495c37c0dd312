#include "ssl/errors.hpp"

namespace ssl {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidDiscretization: return "InvalidDiscretization";
    case ErrorKind::DegenerateShape: return "DegenerateShape";
    case ErrorKind::CollapsedShape: return "CollapsedShape";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::DegenerateMass: return "DegenerateMass";
    case ErrorKind::SolverDivergence: return "SolverDivergence";
    case ErrorKind::NoFeasibleStart: return "NoFeasibleStart";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

bool Error::is_geometry() const noexcept {
  switch (kind_) {
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidDiscretization:
    case ErrorKind::DegenerateShape:
    case ErrorKind::CollapsedShape:
    case ErrorKind::NotContained:
      return true;
    default:
      return false;
  }
}

}  // namespace ssl
