#pragma once

#include <stdexcept>
#include <string>

namespace cmvscat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input values outside an operation's domain (negative weight, |a_k| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Sizes or parameters that violate a precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

// I - H*H is numerically singular; carries the offending largest singular value.
class NearSingularError : public NumericalFailure {
 public:
  NearSingularError(const std::string& what, double sigma_max)
      : NumericalFailure(what), sigma_max_(sigma_max) {}
  double sigma_max() const noexcept { return sigma_max_; }

 private:
  double sigma_max_;
};

// The symbol is outside the regime where scattering data determines the matrix.
class NotRegularError : public Error {
 public:
  NotRegularError(const std::string& what, double sigma_max)
      : Error(what), sigma_max_(sigma_max) {}
  double sigma_max() const noexcept { return sigma_max_; }

 private:
  double sigma_max_;
};

}  // namespace cmvscat
