#pragma once

#include <stdexcept>
#include <string>

namespace ssl {

enum class ErrorKind {
  InvalidInput,
  InvalidDiscretization,
  DegenerateShape,
  CollapsedShape,
  NotContained,
  DegenerateMass,
  SolverDivergence,
  NoFeasibleStart,
  Unsupported,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

  /// Geometry-side failures (bad shapes, bad discretizations).
  bool is_geometry() const noexcept;

 private:
  ErrorKind kind_;
};

}  // namespace ssl
