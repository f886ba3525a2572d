#pragma once

#include <stdexcept>
#include <string>

namespace hcr {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// A trajectory exceeded the blow-up cap.
class BlowupError : public Error {
 public:
  using Error::Error;
};

class NoBracketError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested formula is outside the parameter regime where it applies.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class NoRootError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// An envelope claim could not be certified; the message names the failing check.
class CertificationError : public Error {
 public:
  using Error::Error;
};

/// lower <= reference <= upper was violated somewhere.
class OrderingError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hcr
