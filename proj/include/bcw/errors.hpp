#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bcw {

/// Mathematical infeasibility or precondition failure. The CLI maps these to
/// exit status 2.
enum class Errc {
  InvalidArgument,
  ZeroDivisor,
  NotSharpSymmetric,
  OddDimension,
  SingularY,
  ShapeMismatch,
  NotInvertibleOnBoundary,
  NotPositive,
  NoConvergence,
  NotRelated,
  DuplicatePole,
  SingularResolvent,
  EigenvalueOnCircle,
  UnstableA,
  SingularA,
  SingularD,
  NotStable,
};

std::string_view errc_name(Errc code) noexcept;

class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Unreadable files and inputs that do not match a schema (exit status 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bcw
