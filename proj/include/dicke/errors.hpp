#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

// Base for every failure raised by the library. The CLI maps these to
// nonzero exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParam : public Error {
 public:
  using Error::Error;
};

// min_separation could not be honoured within the retry budget.
class RejectionExhausted : public Error {
 public:
  using Error::Error;
};

class SingularPair : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// An amplitude became NaN/Inf during integration (usually dt too large).
class NonFinite : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  SingularSystem(const std::string& what, double rcond) : Error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dicke
