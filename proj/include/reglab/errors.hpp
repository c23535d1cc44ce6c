#pragma once

#include <stdexcept>
#include <string>

namespace reglab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad tables, non-stable relation lattices, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A desk-scale limit was exceeded (group order, matrix width).
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A request outside an operation's supported domain (e.g. unsupported degree).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two computations that must agree did not. Always a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace reglab
