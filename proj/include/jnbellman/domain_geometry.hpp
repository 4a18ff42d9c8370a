#pragma once

#include "jnbellman/scalar_core.hpp"
#include "jnbellman/tolerance.hpp"

namespace jnb {

/// Point (x1, x2) = (<phi>, <e^phi>) of the plane.
struct Point {
  double x1 = 0.0;
  double x2 = 1.0;
};

/// Which tangent to Gamma_C: plus uses xi+, minus uses xi-.
enum class Branch { plus, minus };

enum class RegionB1 { omega_minus, omega_zero, omega_plus };

enum class RegionDTag { omega1, omega2, omega3, omega4 };

struct RegionD {
  RegionDTag tag;
  double lambda;
};

const char* to_string(RegionB1 r);
const char* to_string(RegionDTag r);

/// (x1 + c, x2 e^c): the image of x under phi -> phi + c.
Point shift(Point x, double c);

/// log(x2) - x1, i.e. log <e^{phi - <phi>}>. Zero on Gamma_1, log C on Gamma_C.
double log_height(Point x);

/// e^{x1} <= x2 <= C e^{x1}, with the upper bound relaxed by tol.rel.
bool in_domain(Point x, const DomainParams& params, const Tolerance& tol = {});

/// True when x sits on Gamma_1 up to tol.rel (relative to e^{x1}).
bool near_lower_boundary(Point x, const Tolerance& tol = {});

/// Tangent point u of the segment from (u, e^u) through x tangent to Gamma_C.
/// plus: x1 - xi+ <= u <= x1. minus: x1 <= u <= x1 - xi-.
double solve_u(Point x, const DomainParams& params, Branch branch, const Tolerance& tol = {});

/// For x in the triangular region to the left of (lambda, e^lambda): the
/// point v with (v, e^v), x, (lambda, e^lambda) collinear, v <= x1.
double solve_v(Point x, double lambda, const DomainParams& params, const Tolerance& tol = {});

/// Three-way split used by b_1. Boundary points belong to omega_zero.
RegionB1 classify_b1(Point x, const DomainParams& params, double rel_tol = 1e-12);

/// Four-way split used by the weak-type candidate. Ties go to the lower
/// index; the singular point (lambda, e^lambda) reports omega4.
RegionD classify_D(Point x, double lambda, const DomainParams& params, double rel_tol = 1e-12);

/// True when the closed segment [a, b] stays in Omega_{C1}. Endpoints must
/// already lie in Omega_{C1}.
bool segment_in_domain(Point a, Point b, double C1, const Tolerance& tol = {});

}  // namespace jnb
