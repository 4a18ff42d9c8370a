#pragma once

#include "jnbellman/tolerance.hpp"

namespace jnb {

/// The A-infinity bound C together with the two roots of exp(-xi) = C (1 - xi).
///
/// xi_minus <= 0 <= xi_plus < 1, both zero iff C == 1. The complements
/// 1 - xi are cached separately because 1 - xi_plus ~ exp(-1)/C loses all
/// relative precision when recomputed from xi_plus for large C.
struct DomainParams {
  double C = 1.0;
  double xi_minus = 0.0;
  double xi_plus = 0.0;
  double one_minus_xi_minus = 1.0;
  double one_minus_xi_plus = 1.0;

  double spread() const noexcept { return xi_plus - xi_minus; }
  bool trivial() const noexcept { return C == 1.0; }
  // Slopes of the tangents to Gamma_C drawn from (0, 1): C e^{xi} = 1 / (1 - xi).
  double tangent_slope_minus() const noexcept { return 1.0 / one_minus_xi_minus; }
  double tangent_slope_plus() const noexcept { return 1.0 / one_minus_xi_plus; }
};

DomainParams solve_xi(double C, const Tolerance& tol = {});

/// k(C) = 2 (1 - xi-)(1 - xi+)(C - 1) / (xi+ - xi-), with k(1) = 0.
double k_of_C(const DomainParams& params);

/// Inverse of k on [0, 2/e). Throws DomainError outside that range.
double k_inverse(double eps, const Tolerance& tol = {});

double gamma_fn(double x);

/// omega(p) = [p/e (Gamma(p) - int_0^1 t^{p-1} e^t dt) + 1]^{1/p}, p >= 1.
double omega(double p);

/// Sharp John-Nirenberg constant of BMO^p((0,1)), 1 <= p <= 2.
double eps0(double p);

/// e^{p-2}/(p-1): smallest C for which b_{p,C} is identified with the
/// Bellman function. Equals 1 at p = 2.
double lower_p_threshold(double p);

/// Sharp C(eps, p) = e^{-r}/(1 - r), r = eps/eps0(p), valid for
/// (2-p) eps0(p) <= eps < eps0(p) and 1 < p <= 2. Throws RangeError outside
/// the window.
double jn_sharp_C(double eps, double p);

struct Bracket {
  double lower;
  double upper;
};

/// Two-sided bound for C(eps, 1): e^{-(e/2)eps}/(1-(e/2)eps) <= C <= k^{-1}(eps).
Bracket jn_bound_p1(double eps);

/// (p-1)^{-1/(2-p)}, continued by its limit e at p = 2.
double weak_type_prefactor(double p);

/// (p-1)^{-1/(2-p)} exp(-eps0(p) lambda / norm).
double weak_type_bound(double p, double lambda, double norm);

/// eps0(p) / min(eps_phi, eps_minus_phi). Either argument may be +inf.
double dist_lower_bound(double p, double eps_phi, double eps_minus_phi);

/// (2/pi) eps0(p).
double hilbert_lower_bound(double p);

/// e^{lo/xi} int_lo^inf |s|^q sgn(s)^{odd} e^{-s/xi} ds for xi > 0, q >= 0.
///
/// For lo <= 0 (and for small positive lo) this is Gamma(q+1) xi^{q+1} e^{lo/xi}
/// corrected by a finite quadrature piece; for larger lo the scaled tail is
/// integrated directly to avoid cancellation.
double scaled_power_tail(double q, bool odd, double xi, double lo);

/// s - log(1+s), accurate near s = 0.
double s_minus_log1p(double s);

/// e^x - 1 - x, accurate near x = 0.
double expm1_minus_x(double x);

}  // namespace jnb
