#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

/// Input violates an operation's precondition (bad vertex, odd n*r, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized procedure ran out of its attempt/resample budget.
class AttemptsExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A colouring certificate is missing or does not match the graph/colouring.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact procedure was asked to run beyond its feasibility guard.
class InfeasibleInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rainbow
