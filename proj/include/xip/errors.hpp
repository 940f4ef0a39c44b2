#pragma once

#include <stdexcept>
#include <string>

namespace xip {

// Base for every failure raised by the library. Each subclass corresponds to one
// documented failure mode so callers (and the CLI exit-code mapping) can branch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

class NotXShaped : public Error {
 public:
  using Error::Error;
};

class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

class NotCPTP : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// Malformed channel specification string.
class ChannelSpecError : public Error {
 public:
  using Error::Error;
};

class UnknownChannel : public ChannelSpecError {
 public:
  using ChannelSpecError::ChannelSpecError;
};

class ConstantIP : public Error {
 public:
  using Error::Error;
};

// The closed-form coefficient map and the Kraus route disagree.
class RouteMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace xip
