#pragma once

#include <stdexcept>
#include <string>

namespace nonrecip {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Gamma-function pole or a vanishing amplitude denominator.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Input outside the admissible region of an operation (energy window,
// non-propagating asymptotics, argument range).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace nonrecip
