#pragma once

#include <functional>
#include <utility>

#include "jnbellman/tolerance.hpp"

namespace jnb::roots {

/// Value and first derivative of a scalar function.
using ValueAndSlope = std::function<std::pair<double, double>(double)>;
using Scalar = std::function<double(double)>;

/// Newton iteration kept inside a sign-changing bracket [lo, hi]. A Newton
/// step that leaves the bracket, or does not shrink it fast enough, is
/// replaced by bisection, so convergence is guaranteed.
///
/// Throws DomainError when f(lo) and f(hi) have the same strict sign and
/// NumericalError (with the final bracket) when max_iter is exhausted.
double newton_bisect(const ValueAndSlope& f, double lo, double hi, const Tolerance& tol);

/// Brent's method (inverse quadratic interpolation + secant + bisection).
double brent(const Scalar& f, double lo, double hi, const Tolerance& tol);

/// Moves `lo` left (lo <- hi - 2 (hi - lo)) until f(lo) and f(hi) differ in
/// sign. Returns the new lo.
double expand_left(const Scalar& f, double lo, double hi, int max_doublings = 1100);

}  // namespace jnb::roots
