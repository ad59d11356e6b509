#pragma once

#include <stdexcept>
#include <string>

namespace ddgpce {

enum class ErrorKind {
  InvalidArgument,
  SizeOverflow,
  DimensionUnsupported,
  NotPositiveDefinite,
  NonFiniteMoment,
  RankDeficient,
  InsufficientTail,
  DegenerateLowFidelity,
  SingularStiffness,
  NoClosedForm,
  ModelEvaluation,
  Config,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception. Every failure carries a kind so front ends can map
/// it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace ddgpce
