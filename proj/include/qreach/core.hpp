#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qreach {

/// Raised for precondition failures and numerical breakdowns.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a certified inequality is found violated. Carries both sides.
class PropertyViolation : public Error {
 public:
  PropertyViolation(const std::string& what, double measured, double bound)
      : Error(what), measured_(measured), bound_(bound) {}
  double measured() const noexcept { return measured_; }
  double bound() const noexcept { return bound_; }

 private:
  double measured_;
  double bound_;
};

/// The single random engine type used everywhere. Seeds are always explicit.
using Rng = std::mt19937_64;

}  // namespace qreach
