#pragma once

#include <stdexcept>
#include <string>

namespace rednow {

// Bad configuration, malformed arguments, missing inputs. CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Anything that fails at run time after validation passed. CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConnectivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Daily regressor history does not cover a requested window.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rank-deficient regression design.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rednow
