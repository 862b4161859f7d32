#pragma once

#include <stdexcept>
#include <string>

namespace djcm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: parameters, dimensions, unknown presets. CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A numerical contract did not hold at run time. CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InvalidDimension : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ContractViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CutoffTooSmall : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LeakageError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace djcm
