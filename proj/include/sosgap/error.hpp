#pragma once

#include <stdexcept>
#include <string>

namespace sosgap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid caller input: bad dimensions, malformed files, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic left the checked 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine (factorization, eigensolver) broke down.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (ball size, group order) was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace sosgap
