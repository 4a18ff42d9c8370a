#include "jnbellman/roots.hpp"

#include <cmath>
#include <sstream>

namespace jnb::roots {

namespace {

bool same_strict_sign(double a, double b)
{
  return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0);
}

[[noreturn]] void not_bracketed(double lo, double hi)
{
  std::ostringstream os;
  os << "root is not bracketed by [" << lo << ", " << hi << "]";
  throw DomainError(os.str());
}

}  // namespace

double newton_bisect(const ValueAndSlope& f, double lo, double hi, const Tolerance& tol)
{
  const double flo = f(lo).first;
  const double fhi = f(hi).first;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (same_strict_sign(flo, fhi)) not_bracketed(lo, hi);

  // Orient so that f(neg) < 0 < f(pos).
  double neg = flo < 0.0 ? lo : hi;
  double pos = flo < 0.0 ? hi : lo;
  double x = 0.5 * (lo + hi);
  double previous_residual = std::fmax(std::fabs(flo), std::fabs(fhi));

  for (int it = 0; it < tol.max_iter; ++it) {
    const auto [fx, dfx] = f(x);
    if (fx == 0.0) return x;
    (fx < 0.0 ? neg : pos) = x;

    const double mid = 0.5 * (neg + pos);
    if (std::fabs(pos - neg) <= tol.width(mid)) return mid;

    double next = x - fx / dfx;
    const bool inside = std::isfinite(next) && next > std::fmin(neg, pos) && next < std::fmax(neg, pos);
    const bool stalling = std::fabs(fx) > 0.5 * previous_residual;
    if (!inside || stalling) next = mid;
    previous_residual = std::fabs(fx);

    if (inside && !stalling && std::fabs(next - x) <= 0.5 * tol.width(x)) return next;
    x = next;
  }
  throw NumericalError("newton_bisect: no convergence", std::fmin(neg, pos), std::fmax(neg, pos));
}

double brent(const Scalar& f, double lo, double hi, const Tolerance& tol)
{
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (same_strict_sign(fa, fb)) not_bracketed(lo, hi);

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < tol.max_iter; ++it) {
    if (same_strict_sign(fb, fc)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double half_tol = 0.5 * tol.width(b);
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= half_tol || fb == 0.0) return b;

    if (std::fabs(e) >= half_tol && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0)
        q = -q;
      else
        p = -p;
      if (2.0 * p < std::fmin(3.0 * m * q - std::fabs(half_tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > half_tol ? d : (m > 0.0 ? half_tol : -half_tol);
    fb = f(b);
  }
  throw NumericalError("brent: no convergence", std::fmin(b, c), std::fmax(b, c));
}

double expand_left(const Scalar& f, double lo, double hi, int max_doublings)
{
  const double fhi = f(hi);
  double flo = f(lo);
  for (int i = 0; i < max_doublings && same_strict_sign(flo, fhi); ++i) {
    lo = hi - 2.0 * (hi - lo);
    flo = f(lo);
    if (!std::isfinite(lo)) break;
  }
  if (same_strict_sign(flo, fhi))
    throw NumericalError("expand_left: no sign change found", lo, hi);
  return lo;
}

}  // namespace jnb::roots
