#pragma once

#include <stdexcept>
#include <string>

namespace climsim {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing or malformed calibration/data files, infeasible optimizer bounds.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Scenario or request payload that violates the lever registry.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A non-finite or physically impossible intermediate value.
class NumericFailure : public Error {
 public:
  NumericFailure(std::string subsystem, const std::string& message, double year = 0.0)
      : Error(message), subsystem_(std::move(subsystem)), year_(year) {}

  const std::string& subsystem() const noexcept { return subsystem_; }
  double year() const noexcept { return year_; }

 private:
  std::string subsystem_;
  double year_;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

/// Two runs that cannot be compared (different grids or outputs).
class ComparisonError : public Error {
 public:
  using Error::Error;
};

}  // namespace climsim
