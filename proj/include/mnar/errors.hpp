#pragma once

#include <stdexcept>
#include <string>

namespace mnar {

// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidProbability : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class PositivityViolation : public Error {
 public:
  using Error::Error;
};

class ZeroConditioningEvent : public Error {
 public:
  using Error::Error;
};

class UndefinedContrast : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mnar
