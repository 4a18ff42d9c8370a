#pragma once

#include <cmath>

#include "jnbellman/errors.hpp"

namespace jnb {

struct Tolerance {
  double abs = 1e-14;
  double rel = 1e-13;
  int max_iter = 200;

  Tolerance() = default;
  Tolerance(double abs_tol, double rel_tol, int iterations)
      : abs(abs_tol), rel(rel_tol), max_iter(iterations)
  {
    if (!(std::isfinite(abs) && abs > 0.0) || !(std::isfinite(rel) && rel > 0.0) || max_iter <= 0)
      throw DomainError("Tolerance: abs and rel must be finite and positive, max_iter > 0");
  }

  // Width below which an interval around `x` counts as converged.
  double width(double x) const noexcept { return abs + rel * std::fabs(x); }
};

inline Tolerance default_tolerance() { return Tolerance{}; }

}  // namespace jnb
