#pragma once

#include <stdexcept>
#include <string>

namespace lreg {

// Base of every exception thrown by the core library. The C API maps each
// subclass onto one lreg_status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class RingMismatch : public Error {
 public:
  using Error::Error;
};

class NonUnit : public Error {
 public:
  using Error::Error;
};

// A series was not expanded far enough for the requested check.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// A hypothesis of a certifying procedure does not hold.
class Inapplicable : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lreg
