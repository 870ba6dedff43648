#pragma once

#include <stdexcept>
#include <string>

namespace riso {

// All library failures derive from riso::Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation (negative length,
// k <= 0, L above the maximal admissible length, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidPointError : public Error {
 public:
  using Error::Error;
};

// Cycle data that does not describe a curve (empty set, a point, identical
// inputs to an intersection).
class DegenerateCycleError : public Error {
 public:
  using Error::Error;
};

// 1 - g^2 - g'^2 <= 0 somewhere on a support profile.
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(const std::string& what, double theta) : Error(what), theta_(theta) {}
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

// State left the admissible set while integrating the control system.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double theta) : Error(what), theta_(theta) {}
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

// Region intersection that is empty, unbounded, or not a lambda-polygon.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace riso
