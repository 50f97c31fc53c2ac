#pragma once

#include <stdexcept>
#include <string>

namespace levywalk {

/// Invalid parameters or configuration. Maps to exit status 2 in the CLI.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (e.g. Re(s) <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Query outside the valid range of a stored object (e.g. t beyond a path horizon).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A subordinator path does not reach the requested level; extend tau_max.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A transform is singular at the requested point (e.g. <k,u> = 0 for some atom).
class SingularConfigurationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or degenerate data handed to an estimator.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File-system failure. Maps to exit status 4 in the CLI.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace levywalk
