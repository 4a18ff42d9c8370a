#include "jnbellman/domain_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jnbellman/errors.hpp"
#include "jnbellman/roots.hpp"

namespace jnb {

namespace {

std::string describe(Point x)
{
  return "(" + std::to_string(x.x1) + ", " + std::to_string(x.x2) + ")";
}

void require_domain(Point x, const DomainParams& params, const Tolerance& tol, const char* who)
{
  if (!in_domain(x, params, tol))
    throw DomainError(std::string(who) + ": point " + describe(x) + " is not in Omega_C, C = " +
                      std::to_string(params.C));
}

const Tolerance kTight(1e-300, 1e-15, 400);

// x/w -> (e^w - 1)/w, continuous at 0.
double secant_slope(double w) { return w == 0.0 ? 1.0 : std::expm1(w) / w; }

}  // namespace

const char* to_string(RegionB1 r)
{
  switch (r) {
    case RegionB1::omega_minus: return "omega_minus";
    case RegionB1::omega_zero: return "omega_zero";
    case RegionB1::omega_plus: return "omega_plus";
  }
  return "?";
}

const char* to_string(RegionDTag r)
{
  switch (r) {
    case RegionDTag::omega1: return "omega1";
    case RegionDTag::omega2: return "omega2";
    case RegionDTag::omega3: return "omega3";
    case RegionDTag::omega4: return "omega4";
  }
  return "?";
}

Point shift(Point x, double c) { return {x.x1 + c, x.x2 * std::exp(c)}; }

double log_height(Point x) { return std::log(x.x2) - x.x1; }

bool in_domain(Point x, const DomainParams& params, const Tolerance& tol)
{
  if (!std::isfinite(x.x1) || !std::isfinite(x.x2) || !(x.x2 > 0.0)) return false;
  const double h = log_height(x);
  return h >= -tol.rel && h <= std::log(params.C) + tol.rel;
}

bool near_lower_boundary(Point x, const Tolerance& tol) { return log_height(x) <= tol.rel; }

double solve_u(Point x, const DomainParams& params, Branch branch, const Tolerance& tol)
{
  require_domain(x, params, tol, "solve_u");
  if (params.trivial() || log_height(x) <= 0.0) return x.x1;
  const double log_C = std::log(params.C);
  // With s = d - xi and d = x1 - u the tangency condition reads s - log(1+s) = q.
  const double q = std::clamp(log_C - log_height(x), 0.0, log_C);
  const double xi = branch == Branch::plus ? params.xi_plus : params.xi_minus;
  double lo = branch == Branch::plus ? -params.xi_plus : 0.0;
  double hi = branch == Branch::plus ? 0.0 : -params.xi_minus;
  auto f = [q](double s) { return std::pair{s_minus_log1p(s) - q, s / (1.0 + s)}; };
  const double f_lo = f(lo).first;
  const double f_hi = f(hi).first;
  double s;
  if (f_lo * f_hi > 0.0)
    s = std::fabs(f_lo) < std::fabs(f_hi) ? lo : hi;  // rounding at an end of the range
  else
    s = roots::newton_bisect(f, lo, hi, kTight);
  return x.x1 - (xi + s);
}

double solve_v(Point x, double lambda, const DomainParams& params, const Tolerance& tol)
{
  require_domain(x, params, tol, "solve_v");
  const Point X = shift(x, -lambda);
  if (X.x1 == 0.0) throw DomainError("solve_v: x1 == lambda, the secant is degenerate");
  const double w_lo = params.xi_minus - params.xi_plus;
  const double line = X.x1 * params.tangent_slope_minus() + 1.0;
  // At least the band classify_D assigns to omega2.
  const double slack = tol.rel * std::exp(X.x1) + 1e-12 * (std::fabs(line) + params.C * std::exp(X.x1));
  if (X.x1 > 0.0 || X.x1 < w_lo * (1.0 + 1e-12) - 1e-15 || X.x2 > line + slack)
    throw DomainError("solve_v: point " + describe(x) + " is outside the secant region of lambda = " +
                      std::to_string(lambda));
  if (near_lower_boundary(X, tol)) return x.x1;
  const double target = (X.x2 - 1.0) / X.x1;
  auto g = [target](double w) { return secant_slope(w) - target; };
  const double hi = X.x1;
  const double lo = std::min(w_lo, hi);
  if (g(lo) >= 0.0) return lambda + lo;
  if (g(hi) <= 0.0) return lambda + hi;
  return lambda + roots::brent(g, lo, hi, kTight);
}

RegionB1 classify_b1(Point x, const DomainParams& params, double rel_tol)
{
  require_domain(x, params, Tolerance{}, "classify_b1");
  if (x.x1 >= params.xi_minus && x.x1 <= params.xi_plus) {
    const double slope = x.x1 <= 0.0 ? params.tangent_slope_minus() : params.tangent_slope_plus();
    const double line = slope * x.x1 + 1.0;
    if (x.x2 >= line - rel_tol * params.C * std::exp(x.x1)) return RegionB1::omega_zero;
  }
  return x.x1 < 0.0 ? RegionB1::omega_minus : RegionB1::omega_plus;
}

RegionD classify_D(Point x, double lambda, const DomainParams& params, double rel_tol)
{
  require_domain(x, params, Tolerance{}, "classify_D");
  const Point X = shift(x, -lambda);
  const double slack = rel_tol * params.C * std::exp(X.x1);
  const double xm = params.xi_minus;
  const double xp = params.xi_plus;
  auto region = [lambda](RegionDTag t) { return RegionD{t, lambda}; };

  if (std::fabs(X.x1) <= 1e-15 * std::max(1.0, std::fabs(lambda)) && std::fabs(log_height(X)) <= rel_tol)
    return region(RegionDTag::omega4);
  const double line_minus = X.x1 * params.tangent_slope_minus() + 1.0;
  const double line_plus = X.x1 * params.tangent_slope_plus() + 1.0;
  if (X.x1 <= xm - xp) return region(RegionDTag::omega1);
  if (X.x1 <= xm && X.x2 >= line_minus - slack) return region(RegionDTag::omega1);
  if (X.x1 < 0.0 && X.x2 <= line_minus + slack) return region(RegionDTag::omega2);
  if (X.x1 <= 0.0) return region(RegionDTag::omega3);
  if (X.x1 <= xp && X.x2 >= line_plus - slack) return region(RegionDTag::omega3);
  return region(RegionDTag::omega4);
}

bool segment_in_domain(Point a, Point b, double C1, const Tolerance& tol)
{
  const DomainParams outer{C1, 0.0, 0.0, 1.0, 1.0};
  if (!(C1 >= 1.0) || !in_domain(a, outer, tol) || !in_domain(b, outer, tol))
    throw DomainError("segment_in_domain: endpoints must lie in Omega_C1");
  const double d1 = b.x1 - a.x1;
  if (d1 == 0.0) return true;
  const double slope = (b.x2 - a.x2) / d1;
  // x2 - C1 e^{x1} along the segment has at most one interior critical point.
  if (slope <= 0.0) return true;
  const double x1_star = std::log(slope / C1);
  if (!(x1_star > std::min(a.x1, b.x1) && x1_star < std::max(a.x1, b.x1))) return true;
  const double x2_star = a.x2 + slope * (x1_star - a.x1);
  return x2_star <= slope * (1.0 + tol.rel);
}

}  // namespace jnb
