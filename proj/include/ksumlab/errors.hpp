#pragma once

#include <stdexcept>
#include <string>

namespace ksumlab {

// Base for every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  using Error::Error;
};

class BadK : public Error {
 public:
  using Error::Error;
};

class BadRange : public Error {
 public:
  using Error::Error;
};

class TooManyParts : public Error {
 public:
  using Error::Error;
};

class NonLinearPivot : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

}  // namespace ksumlab
