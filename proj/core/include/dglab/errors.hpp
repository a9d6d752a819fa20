#pragma once

#include <stdexcept>
#include <string>

namespace dglab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grid too coarse for the requested band limit.
class AliasingError : public Error {
 public:
  using Error::Error;
};

// Malformed or out-of-contract input data (bad file, nonzero mean for DG, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// A zero with |f'| below tolerance; orbit invariants are undefined.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// Data outside the two-zero regime near the equilibrium manifold.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, long step) : Error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace dglab
