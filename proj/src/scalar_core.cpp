#include "jnbellman/scalar_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "jnbellman/errors.hpp"
#include "jnbellman/quadrature.hpp"
#include "jnbellman/roots.hpp"

namespace jnb {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_p(double p, double lo, double hi, bool lo_open, const char* who)
{
  const bool ok = std::isfinite(p) && (lo_open ? p > lo : p >= lo) && p <= hi;
  if (!ok)
    throw DomainError(std::string(who) + ": p = " + std::to_string(p) + " outside " +
                      (lo_open ? "(" : "[") + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

// Root of e^l - 1 - l = log C in l = log(1 - xi), on the side given by [lo, hi].
double solve_log_complement(double log_C, double lo, double hi, const Tolerance& tol)
{
  const double guess = std::sqrt(2.0 * log_C);
  const Tolerance inner(std::min(tol.abs, 1e-3 * tol.rel * guess), tol.rel, tol.max_iter);
  auto f = [log_C](double l) { return std::pair{expm1_minus_x(l) - log_C, std::expm1(l)}; };
  return roots::newton_bisect(f, lo, hi, inner);
}

}  // namespace

double expm1_minus_x(double x)
{
  if (std::fabs(x) < 0.1) {
    double term = x * x / 2.0;
    double sum = term;
    for (int n = 3; n < 30; ++n) {
      term *= x / n;
      sum += term;
      if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
  }
  return std::expm1(x) - x;
}

double s_minus_log1p(double s)
{
  if (std::fabs(s) < 0.1) {
    // s - log(1+s) = sum_{n>=2} (-1)^n s^n / n
    double power = s * s;
    double sum = power / 2.0;
    for (int n = 3; n < 60; ++n) {
      power *= -s;
      const double term = power / n;
      sum += term;
      if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
  }
  return s - std::log1p(s);
}

DomainParams solve_xi(double C, const Tolerance& tol)
{
  if (!std::isfinite(C) || !(C >= 1.0))
    throw DomainError("solve_xi: C must be finite and >= 1, got " + std::to_string(C));
  DomainParams out;
  out.C = C;
  if (C == 1.0) return out;
  const double log_C = std::log(C);

  // 1 - xi+ lies in [e^{-1}/C, 1/C].
  const double l_plus = solve_log_complement(log_C, -1.0 - log_C, -log_C, tol);
  out.xi_plus = -std::expm1(l_plus);
  out.one_minus_xi_plus = std::exp(l_plus);

  // xi- is found from [-1, 0], doubling the left end until the sign changes.
  auto h = [log_C](double xi) { return s_minus_log1p(-xi) - log_C; };
  const double xi_lo = roots::expand_left(h, -1.0, 0.0);
  const double l_lo = std::log1p(-xi_lo);
  const double l_minus = solve_log_complement(log_C, 0.0, l_lo, tol);
  out.xi_minus = -std::expm1(l_minus);
  out.one_minus_xi_minus = std::exp(l_minus);
  return out;
}

double k_of_C(const DomainParams& params)
{
  if (params.trivial()) return 0.0;
  return 2.0 * params.one_minus_xi_minus * params.one_minus_xi_plus * (params.C - 1.0) /
         params.spread();
}

double k_inverse(double eps, const Tolerance& tol)
{
  if (!std::isfinite(eps) || eps < 0.0 || eps >= 2.0 / kE)
    throw DomainError("k_inverse: eps must lie in [0, 2/e), got " + std::to_string(eps));
  if (eps == 0.0) return 1.0;
  // k(C) >= (2/e)(1 - 1/C), so the root satisfies C <= 1/(1 - (e/2) eps).
  auto f = [eps](double log_C) { return k_of_C(solve_xi(std::exp(log_C))) - eps; };
  double hi = -std::log1p(-0.5 * kE * eps);
  for (int i = 0; i < 60 && f(hi) < 0.0; ++i) hi = 1.01 * hi + 1e-12;
  const Tolerance inner(1e-300, std::min(tol.rel, 1e-15), tol.max_iter);
  return std::exp(roots::brent(f, 0.0, hi, inner));
}

double gamma_fn(double x) { return std::tgamma(x); }

double omega(double p)
{
  require_p(p, 1.0, kInf, false, "omega");
  auto integrand = [p](double t) { return t == 0.0 ? (p == 1.0 ? 1.0 : 0.0) : std::pow(t, p - 1.0) * std::exp(t); };
  const quad::Result partial = quad::integrate(integrand, 0.0, 1.0, {1e-16, 1e-15, 2000});
  const double bracket = p / kE * (gamma_fn(p) - partial.value) + 1.0;
  return std::pow(bracket, 1.0 / p);
}

double eps0(double p)
{
  require_p(p, 1.0, 2.0, false, "eps0");
  return omega(p);
}

double lower_p_threshold(double p)
{
  require_p(p, 1.0, 2.0, true, "lower_p_threshold");
  return std::exp(p - 2.0) / (p - 1.0);
}

double jn_sharp_C(double eps, double p)
{
  require_p(p, 1.0, 2.0, true, "jn_sharp_C");
  const double e0 = eps0(p);
  const double lo = (2.0 - p) * e0;
  if (!std::isfinite(eps) || eps < lo || eps >= e0)
    throw RangeError("jn_sharp_C: eps = " + std::to_string(eps) + " outside [" + std::to_string(lo) +
                     ", " + std::to_string(e0) + ")");
  const double r = eps / e0;
  return std::exp(-r) / (1.0 - r);
}

Bracket jn_bound_p1(double eps)
{
  if (!std::isfinite(eps) || eps < 0.0 || eps >= 2.0 / kE)
    throw DomainError("jn_bound_p1: eps must lie in [0, 2/e), got " + std::to_string(eps));
  const double a = 0.5 * kE * eps;
  return {std::exp(-a) / (1.0 - a), k_inverse(eps)};
}

double weak_type_prefactor(double p)
{
  require_p(p, 1.0, 2.0, true, "weak_type_prefactor");
  if (p == 2.0) return kE;
  return std::exp(-std::log1p(p - 2.0) / (2.0 - p));
}

double weak_type_bound(double p, double lambda, double norm)
{
  if (!(lambda >= 0.0) || !(norm > 0.0) || !std::isfinite(norm))
    throw DomainError("weak_type_bound: need lambda >= 0 and a finite norm > 0");
  return weak_type_prefactor(p) * std::exp(-eps0(p) * lambda / norm);
}

double dist_lower_bound(double p, double eps_phi, double eps_minus_phi)
{
  if (!(eps_phi > 0.0) || !(eps_minus_phi > 0.0))
    throw DomainError("dist_lower_bound: exponents must be positive (or +inf)");
  return eps0(p) / std::min(eps_phi, eps_minus_phi);
}

double hilbert_lower_bound(double p) { return 2.0 / std::numbers::pi * eps0(p); }

double scaled_power_tail(double q, bool odd, double xi, double lo)
{
  if (!(xi > 0.0) || !std::isfinite(xi) || !(q >= 0.0) || std::isnan(lo))
    throw DomainError("scaled_power_tail: need xi > 0 and q >= 0");
  const quad::Options opt{1e-300, 1e-14, 2000};
  auto power = [q](double s) { return q == 0.0 ? 1.0 : std::pow(std::fabs(s), q); };
  const double full = gamma_fn(q + 1.0) * std::pow(xi, q + 1.0);

  if (lo <= 0.0) {
    // Weight e^{-(s-lo)/xi} <= 1 on [lo, 0].
    auto g = [&](double s) { return power(s) * std::exp(-(s - lo) / xi); };
    const double finite = quad::integrate(g, lo, 0.0, opt).value;
    return full * std::exp(lo / xi) + (odd ? -finite : finite);
  }
  if (lo <= xi) {
    auto g = [&](double s) { return power(s) * std::exp((lo - s) / xi); };
    const double finite = quad::integrate(g, 0.0, lo, opt).value;
    return full * std::exp(lo / xi) - finite;
  }
  auto g = [&](double r) { return power(lo + r) * std::exp(-r / xi); };
  return quad::integrate_to_infinity(g, 0.0, xi, opt).value;
}

}  // namespace jnb
