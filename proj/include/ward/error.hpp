#pragma once

#include <stdexcept>
#include <string>

namespace ward {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A value that does not live in the coordinate field was requested.
class RepresentabilityError : public Error {
 public:
  using Error::Error;
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class LocationError : public Error {
 public:
  using Error::Error;
};

class InvalidSurface : public Error {
 public:
  using Error::Error;
};

class UnsupportedSurface : public Error {
 public:
  using Error::Error;
};

/// Separatrix tracing did not close up within the crossing cap.
class NotPeriodicDirection : public Error {
 public:
  using Error::Error;
};

class CannotBuildParabolic : public Error {
 public:
  using Error::Error;
};

class UndefinedCoordinates : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ward
