#include "jnbellman/bellman_candidates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jnbellman/errors.hpp"

namespace jnb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_domain(Point x, const DomainParams& params, const Tolerance& tol, const char* who)
{
  if (!in_domain(x, params, tol))
    throw DomainError(std::string(who) + ": point outside Omega_C");
}

double signed_power(double s, double q)
{
  if (s == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(s), q), s);
}

// m(u) for b_p: (p / xi) e^{u/xi} int_u^inf |s|^{p-1} sgn(s) e^{-s/xi} ds.
double slope_b_p(double u, double p, double xi)
{
  return p / xi * scaled_power_tail(p - 1.0, true, xi, u);
}

double omega1_scale(double u, double lambda, const DomainParams& params)
{
  const double xp = params.xi_plus;
  return std::exp((params.spread() + u - lambda) / xp) / params.spread();
}

}  // namespace

CandidateValue eval_b_p(Point x, double p, const DomainParams& params, const Tolerance& tol)
{
  if (!(p > 1.0 && p <= 2.0)) throw DomainError("eval_b_p: p must lie in (1, 2]");
  require_domain(x, params, tol, "eval_b_p");
  CandidateValue out;
  out.below_threshold = params.C < lower_p_threshold(p) * (1.0 - 1e-14);
  if (params.trivial() || near_lower_boundary(x, tol)) {
    out.value = std::pow(std::fabs(x.x1), p);
    return out;
  }
  const double u = solve_u(x, params, Branch::plus, tol);
  out.value = slope_b_p(u, p, params.xi_plus) * (x.x1 - u) + std::pow(std::fabs(u), p);
  return out;
}

double eval_b_1(Point x, const DomainParams& params, const Tolerance& tol)
{
  require_domain(x, params, tol, "eval_b_1");
  if (params.trivial() || near_lower_boundary(x, tol)) return std::fabs(x.x1);
  switch (classify_b1(x, params)) {
    case RegionB1::omega_minus: return -x.x1;
    case RegionB1::omega_plus: return x.x1;
    case RegionB1::omega_zero: break;
  }
  const double xm = params.xi_minus;
  const double xp = params.xi_plus;
  const double spread = params.spread();
  return 2.0 * params.one_minus_xi_minus * params.one_minus_xi_plus / spread * (x.x2 - 1.0) +
         (xp + xm - 2.0) / spread * x.x1;
}

double eval_B2(Point x, const DomainParams& params, const Tolerance& tol)
{
  require_domain(x, params, tol, "eval_B2");
  if (params.trivial() || near_lower_boundary(x, tol)) return x.x1 * x.x1;
  const double u = solve_u(x, params, Branch::minus, tol);
  return 2.0 * u * x.x1 - u * u + 2.0 * params.xi_minus * (x.x1 - u);
}

CandidateValue eval_A(Point x, double delta, const DomainParams& params, const Tolerance& tol)
{
  if (!(delta >= 1.0) || !std::isfinite(delta)) throw DomainError("eval_A: delta must be >= 1");
  require_domain(x, params, tol, "eval_A");
  CandidateValue out;
  if (params.trivial() || near_lower_boundary(x, tol)) {
    out.value = std::exp(delta * x.x1);
    return out;
  }
  const double dx = delta * params.xi_plus;
  // 1 - delta xi+ from the cached 1 - xi+: exact at delta = 1.
  const double one_minus_dx = params.one_minus_xi_plus - (delta - 1.0) * params.xi_plus;
  if (dx >= 1.0 || delta >= 1.0 / params.xi_plus || !(one_minus_dx > 0.0)) {
    out.value = kInf;
    out.infinite = true;
    return out;
  }
  const double u = solve_u(x, params, Branch::plus, tol);
  out.value = std::exp(delta * u) * (delta * (x.x1 - u) / one_minus_dx + 1.0);
  return out;
}

double eval_D(Point x, double lambda, const DomainParams& params, const Tolerance& tol)
{
  if (!std::isfinite(lambda)) throw DomainError("eval_D: lambda must be finite");
  require_domain(x, params, tol, "eval_D");
  if (params.trivial() || near_lower_boundary(x, tol)) return x.x1 >= lambda ? 1.0 : 0.0;
  const RegionD region = classify_D(x, lambda, params);
  const Point X = shift(x, -lambda);
  double value = 0.0;
  switch (region.tag) {
    case RegionDTag::omega4:
      value = 1.0;
      break;
    case RegionDTag::omega3: {
      const double spread = params.spread();
      value = params.one_minus_xi_minus / (spread * spread) *
                  (X.x1 + (1.0 - X.x2) * params.one_minus_xi_plus) +
              1.0;
      break;
    }
    case RegionDTag::omega2: {
      const double v = solve_v(x, lambda, params, tol);
      value = v == x.x1 ? 0.0 : (x.x1 - v) / (lambda - v);
      break;
    }
    case RegionDTag::omega1: {
      const double u = solve_u(x, params, Branch::plus, tol);
      value = omega1_scale(u, lambda, params) * (x.x1 - u);
      break;
    }
  }
  return std::clamp(value, 0.0, 1.0);
}

VerticalEnvelope max_D_over_vertical(double lambda, const DomainParams& params)
{
  if (!std::isfinite(lambda)) throw DomainError("max_D_over_vertical: lambda must be finite");
  if (params.trivial()) {
    const double v = lambda <= 0.0 ? 1.0 : 0.0;
    return {v, v};
  }
  const double xm = params.xi_minus;
  const double xp = params.xi_plus;
  const double spread = params.spread();
  VerticalEnvelope out{};
  if (lambda <= 0.0)
    out.envelope = 1.0;
  else if (lambda <= -xm)
    out.envelope = 1.0 - lambda / spread;
  else
    out.envelope = xp / spread * std::exp(-(xm + lambda) / xp);
  out.simplified = lambda < 0.0 ? 1.0 : std::exp(-(xm + lambda) / xp) / (1.0 - xm / xp);
  return out;
}

Gradient gradient_b_p(Point x, double p, const DomainParams& params)
{
  const double xi = params.xi_plus;
  const double u = solve_u(x, params, Branch::plus);
  const double m = slope_b_p(u, p, xi);
  const double mp = (m - p * signed_power(u, p - 1.0)) / xi;
  return {m - mp, mp * std::exp(-u) * params.one_minus_xi_plus};
}

Gradient gradient_B2(Point x, const DomainParams& params)
{
  const double u = solve_u(x, params, Branch::minus);
  const double m = 2.0 * (u + params.xi_minus);
  const double mp = 2.0;
  return {m - mp, mp * std::exp(-u) * params.one_minus_xi_minus};
}

Gradient gradient_A(Point x, double delta, const DomainParams& params)
{
  const double xi = params.xi_plus;
  const double one_minus_dx = params.one_minus_xi_plus - (delta - 1.0) * xi;
  if (delta * xi >= 1.0 || !(one_minus_dx > 0.0)) throw DomainError("gradient_A: candidate is infinite for delta xi+ >= 1");
  const double u = solve_u(x, params, Branch::plus);
  const double m = delta * std::exp(delta * u) / one_minus_dx;
  const double mp = delta * m;
  return {m - mp, mp * std::exp(-u) * params.one_minus_xi_plus};
}

Gradient gradient_D_omega1(Point x, double lambda, const DomainParams& params)
{
  const double u = solve_u(x, params, Branch::plus);
  const double m = omega1_scale(u, lambda, params);
  const double mp = m / params.xi_plus;
  return {m - mp, mp * std::exp(-u) * params.one_minus_xi_plus};
}

Gradient gradient_D_omega2(Point x, double lambda, const DomainParams& params)
{
  // Recentred: D = 1 - X1/V with X1 q(V) = X2 - 1, q(V) = (e^V - 1)/V.
  const Point X = shift(x, -lambda);
  const double V = solve_v(x, lambda, params) - lambda;
  const double q = std::expm1(V) / V;
  const double dq = (V * std::exp(V) - std::expm1(V)) / (V * V);
  const double d2 = 1.0 / (V * V * dq);
  return {-1.0 / V - q * d2, d2 * std::exp(-lambda)};
}

Gradient gradient(const CandidateKind& kind, Point x, const DomainParams& params)
{
  return std::visit(
      Overloaded{
          [&](const LowerP& k) -> Gradient {
            if (k.p > 1.0) return gradient_b_p(x, k.p, params);
            switch (classify_b1(x, params)) {
              case RegionB1::omega_minus: return {-1.0, 0.0};
              case RegionB1::omega_plus: return {1.0, 0.0};
              case RegionB1::omega_zero: break;
            }
            const double spread = params.spread();
            return {(params.xi_plus + params.xi_minus - 2.0) / spread,
                    2.0 * params.one_minus_xi_minus * params.one_minus_xi_plus / spread};
          },
          [&](const UpperSquare&) { return gradient_B2(x, params); },
          [&](const ExpDelta& k) { return gradient_A(x, k.delta, params); },
          [&](const WeakType& k) -> Gradient {
            switch (classify_D(x, k.lambda, params).tag) {
              case RegionDTag::omega4: return {0.0, 0.0};
              case RegionDTag::omega3: {
                const double a = params.one_minus_xi_minus / (params.spread() * params.spread());
                return {a, -a * params.one_minus_xi_plus * std::exp(-k.lambda)};
              }
              case RegionDTag::omega2: return gradient_D_omega2(x, k.lambda, params);
              case RegionDTag::omega1: break;
            }
            return gradient_D_omega1(x, k.lambda, params);
          },
      },
      kind);
}

double boundary_value(const CandidateKind& kind, double t)
{
  return std::visit(Overloaded{
                        [t](const LowerP& k) { return std::pow(std::fabs(t), k.p); },
                        [t](const UpperSquare&) { return t * t; },
                        [t](const ExpDelta& k) { return std::exp(k.delta * t); },
                        [t](const WeakType& k) { return t >= k.lambda ? 1.0 : 0.0; },
                    },
                    kind);
}

CandidateValue evaluate(const CandidateKind& kind, Point x, const DomainParams& params, const Tolerance& tol)
{
  return std::visit(Overloaded{
                        [&](const LowerP& k) {
                          if (k.p == 1.0) return CandidateValue{eval_b_1(x, params, tol)};
                          return eval_b_p(x, k.p, params, tol);
                        },
                        [&](const UpperSquare&) { return CandidateValue{eval_B2(x, params, tol)}; },
                        [&](const ExpDelta& k) { return eval_A(x, k.delta, params, tol); },
                        [&](const WeakType& k) { return CandidateValue{eval_D(x, k.lambda, params, tol)}; },
                    },
                    kind);
}

int concavity_sign(const CandidateKind& kind)
{
  return std::holds_alternative<LowerP>(kind) ? -1 : 1;
}

const char* name_of(const CandidateKind& kind)
{
  return std::visit(Overloaded{
                        [](const LowerP& k) { return k.p == 1.0 ? "b_1" : "b_p"; },
                        [](const UpperSquare&) { return "B_2"; },
                        [](const ExpDelta&) { return "A_delta"; },
                        [](const WeakType&) { return "D_lambda"; },
                    },
                    kind);
}

}  // namespace jnb
