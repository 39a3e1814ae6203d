#pragma once

#include <stdexcept>
#include <string>

namespace coboson {

// Base of all domain failures that are not plain argument errors.
// Argument errors use std::invalid_argument directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericInstability : public Error {
 public:
  NumericInstability(const std::string& what, int n) : Error(what), n_(n) {}
  int n() const { return n_; }

 private:
  int n_;
};

class InconsistentTable : public Error {
 public:
  using Error::Error;
};

class DivergentEigenvalue : public Error {
 public:
  using Error::Error;
};

class ExhaustedLadder : public Error {
 public:
  using Error::Error;
};

class TailNotBounded : public Error {
 public:
  using Error::Error;
};

class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace coboson
