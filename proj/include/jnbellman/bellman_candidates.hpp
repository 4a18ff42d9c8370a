#pragma once

#include <variant>

#include "jnbellman/domain_geometry.hpp"
#include "jnbellman/scalar_core.hpp"
#include "jnbellman/tolerance.hpp"

namespace jnb {

/// Candidate value. `infinite` is set where the candidate is +inf (the
/// exponential candidate with delta xi+ >= 1 off Gamma_1). `below_threshold`
/// marks b_p evaluated for C < e^{p-2}/(p-1), where the value is still
/// computed but is not claimed to be the Bellman function.
struct CandidateValue {
  double value = 0.0;
  bool infinite = false;
  bool below_threshold = false;
};

/// Lower Bellman candidate for <|phi|^p>, 1 < p <= 2.
CandidateValue eval_b_p(Point x, double p, const DomainParams& params, const Tolerance& tol = {});

/// Lower Bellman function for <|phi|>.
double eval_b_1(Point x, const DomainParams& params, const Tolerance& tol = {});

/// Upper Bellman function for <phi^2>.
double eval_B2(Point x, const DomainParams& params, const Tolerance& tol = {});

/// Upper Bellman function for <e^{delta phi}>, delta >= 1.
CandidateValue eval_A(Point x, double delta, const DomainParams& params, const Tolerance& tol = {});

/// Upper Bellman function for |{phi >= lambda}|. Values lie in [0, 1].
double eval_D(Point x, double lambda, const DomainParams& params, const Tolerance& tol = {});

/// sup of eval_D over the vertical segment {x1 = 0}: the exact three-piece
/// envelope and the single-exponential bound that dominates it for lambda >= 0.
struct VerticalEnvelope {
  double envelope;
  double simplified;
};
VerticalEnvelope max_D_over_vertical(double lambda, const DomainParams& params);

struct Gradient {
  double d1;
  double d2;
};

/// Closed-form gradients of the candidates built from tangents,
/// G = m(u)(x1 - u) + f(u):  dG/dx1 = m - m', dG/dx2 = m' e^{-u}(1 - xi),
/// with xi m' = m - f'(u).
Gradient gradient_b_p(Point x, double p, const DomainParams& params);
Gradient gradient_B2(Point x, const DomainParams& params);
Gradient gradient_A(Point x, double delta, const DomainParams& params);
/// Valid in omega1 of classify_D only.
Gradient gradient_D_omega1(Point x, double lambda, const DomainParams& params);
/// Valid in omega2 of classify_D only, away from (lambda, e^lambda).
Gradient gradient_D_omega2(Point x, double lambda, const DomainParams& params);

struct LowerP {
  double p;  // in [1, 2]; p == 1 selects b_1
};
struct UpperSquare {};
struct ExpDelta {
  double delta;
};
struct WeakType {
  double lambda;
};
using CandidateKind = std::variant<LowerP, UpperSquare, ExpDelta, WeakType>;

/// Gradient of the candidate on the smooth piece containing x (closed forms
/// above; the remaining pieces are affine).
Gradient gradient(const CandidateKind& kind, Point x, const DomainParams& params);

/// Boundary function f(t) with G(t, e^t) = f(t).
double boundary_value(const CandidateKind& kind, double t);

/// Dispatches to the evaluator for `kind`.
CandidateValue evaluate(const CandidateKind& kind, Point x, const DomainParams& params,
                        const Tolerance& tol = {});

/// +1 for locally concave candidates (upper), -1 for locally convex (lower).
int concavity_sign(const CandidateKind& kind);

const char* name_of(const CandidateKind& kind);

}  // namespace jnb
