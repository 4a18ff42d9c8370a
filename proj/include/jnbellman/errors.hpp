#pragma once

#include <stdexcept>
#include <string>

namespace jnb {

// Input lies outside the set where an operation is defined (C < 1, x not in
// Omega_C, p out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input is inside the mathematical domain but outside the window where a
// formula is valid, e.g. eps outside [(2-p) eps0(p), eps0(p)).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// An iterative method failed. Carries the last bracket it held.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}

  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace jnb
