#pragma once

#include <stdexcept>
#include <string>

namespace infomarket {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent problem instance (mismatched state spaces,
// non-partitions, bad dimensions, ...).
class InstanceError : public Error {
 public:
  using Error::Error;
};

// Conditioning on an event of probability zero.
class NullConditioningError : public Error {
 public:
  using Error::Error;
};

// Simulation requested from a state the prior rules out.
class ImpossibleStateError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace infomarket
