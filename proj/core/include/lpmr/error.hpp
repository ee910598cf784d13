#pragma once

#include <stdexcept>
#include <string>

namespace lpmr {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The reduction budget of a single call ran out; the input may diverge.
class FuelExhausted : public Error {
 public:
  FuelExhausted() : Error("reduction fuel exhausted (possible non-termination)") {}
};

// A constant was used that is not in the relevant theory or assignment.
class UnknownConstant : public Error {
 public:
  explicit UnknownConstant(const std::string& name)
      : Error("unknown constant '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Raised when an invariant the library itself should guarantee is broken.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpmr
