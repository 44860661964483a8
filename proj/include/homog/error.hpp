#pragma once

#include <stdexcept>
#include <string>

namespace homog {

/// Grid size is not an even power of two >= 8.
class SizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation's documented precondition does not hold for its input.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input lies outside the domain where the formula is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent experiment configuration. `field` names the
/// offending key when one can be identified.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A time step was refused because it violates the CFL bound.
class StepRejected : public std::runtime_error {
 public:
  StepRejected(const std::string& what, double admissible_dt)
      : std::runtime_error(what), admissible_dt_(admissible_dt) {}

  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  double admissible_dt_;
};

/// The integration produced a non-physical state (NaN, ordering violation,
/// vortex collision). Runners map this to exit code 2.
class PhysicsAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace homog
