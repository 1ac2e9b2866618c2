#pragma once

#include <stdexcept>
#include <string>

namespace novlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed an argument outside the operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two fields that must share a grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// The grid cannot represent the requested frequencies.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Zero or negative values where a positive quantity is required (e.g. a log-log fit).
class DegenerateData : public Error {
 public:
  using Error::Error;
};

/// Solver state left the bounded short-time regime or became non-finite.
class BlowUp : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace novlab
