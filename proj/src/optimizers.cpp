#include "jnbellman/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jnbellman/errors.hpp"

namespace jnb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGap = 1e-14;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double ramp_at(const LogRamp& r, double t) { return r.u + r.xi * std::log(r.alpha / t); }

// Point where the ramp takes the value `level`.
double ramp_crossing(const LogRamp& r, double level) { return r.alpha * std::exp((r.u - level) / r.xi); }

bool is_flat(const LogRamp& r) { return r.xi == 0.0; }

// int_s^t phi.
double integral_identity(const Piece& piece, double s, double t)
{
  return std::visit(Overloaded{
                        [&](const Constant& k) { return k.c * (t - s); },
                        [&](const LogRamp& r) {
                          if (is_flat(r)) return r.u * (t - s);
                          auto F = [&](double tau) { return tau == 0.0 ? 0.0 : tau * (std::log(r.alpha / tau) + 1.0); };
                          return r.u * (t - s) + r.xi * (F(t) - F(s));
                        },
                    },
                    piece.kind);
}

// int_s^t e^{delta phi}; +inf when divergent at 0.
double integral_exp(const Piece& piece, double delta, double s, double t)
{
  return std::visit(Overloaded{
                        [&](const Constant& k) { return std::exp(delta * k.c) * (t - s); },
                        [&](const LogRamp& r) {
                          if (is_flat(r)) return std::exp(delta * r.u) * (t - s);
                          // e^{delta u} (alpha/tau)^k with k = delta xi.
                          const double k = delta * r.xi;
                          if (s == 0.0 && k >= 1.0) return kInf;
                          if (k == 1.0) return std::exp(delta * r.u) * r.alpha * std::log(t / s);
                          const double one_minus_k = 1.0 - k;
                          const double head = std::exp(delta * r.u + k * std::log(r.alpha) + one_minus_k * std::log(t));
                          return head * -std::expm1(one_minus_k * std::log(s / t)) / one_minus_k;
                        },
                    },
                    piece.kind);
}

// int_s^t |phi - c|^p.
double integral_abs_power(const Piece& piece, double p, double c, double s, double t)
{
  return std::visit(Overloaded{
                        [&](const Constant& k) { return std::pow(std::fabs(k.c - c), p) * (t - s); },
                        [&](const LogRamp& r) {
                          double u = r.u - c;
                          double xi = r.xi;
                          if (xi == 0.0) return std::pow(std::fabs(u), p) * (t - s);
                          if (xi < 0.0) {
                            u = -u;
                            xi = -xi;
                          }
                          // tau * e^{sigma/xi} int_sigma^inf |y|^p e^{-y/xi} dy, sigma = ramp value at tau.
                          auto term = [&](double tau) {
                            if (tau == 0.0) return 0.0;
                            const double sigma = u + xi * std::log(r.alpha / tau);
                            return tau * scaled_power_tail(p, false, xi, sigma);
                          };
                          return (term(t) - term(s)) / xi;
                        },
                    },
                    piece.kind);
}

double measure_ge(const Piece& piece, double level, double s, double t)
{
  return std::visit(Overloaded{
                        [&](const Constant& k) { return k.c >= level ? t - s : 0.0; },
                        [&](const LogRamp& r) {
                          if (is_flat(r)) return r.u >= level ? t - s : 0.0;
                          const double cross = ramp_crossing(r, level);
                          if (r.xi > 0.0) return std::max(0.0, std::min(t, cross) - s);
                          return std::max(0.0, t - std::max(s, cross));
                        },
                    },
                    piece.kind);
}

double measure_le(const Piece& piece, double level, double s, double t)
{
  return std::visit(Overloaded{
                        [&](const Constant& k) { return k.c <= level ? t - s : 0.0; },
                        [&](const LogRamp& r) {
                          if (is_flat(r)) return r.u <= level ? t - s : 0.0;
                          const double cross = ramp_crossing(r, level);
                          if (r.xi > 0.0) return std::max(0.0, t - std::max(s, cross));
                          return std::max(0.0, std::min(t, cross) - s);
                        },
                    },
                    piece.kind);
}

void require_interval(Interval J)
{
  if (!(J.a >= 0.0 && J.b <= 1.0 && J.a < J.b)) throw DomainError("interval must satisfy 0 <= a < b <= 1");
}

// Sum of g(piece, s, t) over the parts of the pieces inside J.
template <class G>
double accumulate(const PiecewiseLogStep& phi, Interval J, G&& g)
{
  double total = 0.0;
  for (const Piece& piece : phi.pieces()) {
    const double s = std::max(piece.lo, J.a);
    const double t = std::min(piece.hi, J.b);
    if (t > s) total += g(piece, s, t);
  }
  return total;
}

Piece constant(double lo, double hi, double c) { return Piece{lo, hi, Constant{c}}; }

void require_domain(Point x, const DomainParams& params, const char* who)
{
  if (!in_domain(x, params)) throw DomainError(std::string(who) + ": point outside Omega_C");
}

PiecewiseLogStep tangent_ramp(Point x, const DomainParams& params, Branch branch)
{
  if (params.trivial() || near_lower_boundary(x)) return PiecewiseLogStep({constant(0.0, 1.0, x.x1)});
  const double xi = branch == Branch::plus ? params.xi_plus : params.xi_minus;
  const double u = solve_u(x, params, branch);
  const double alpha = std::clamp((x.x1 - u) / xi, 0.0, 1.0);
  return PiecewiseLogStep({Piece{0.0, alpha, LogRamp{u, xi, alpha}}, constant(alpha, 1.0, u)});
}

}  // namespace

double Piece::operator()(double t) const
{
  return std::visit(Overloaded{
                        [](const Constant& k) { return k.c; },
                        [t](const LogRamp& r) { return is_flat(r) ? r.u : ramp_at(r, t); },
                    },
                    kind);
}

PiecewiseLogStep::PiecewiseLogStep(std::vector<Piece> pieces)
{
  for (Piece& p : pieces) {
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi)) throw DomainError("piece endpoints must be finite");
    if (p.hi > p.lo) pieces_.push_back(p);
  }
  if (pieces_.empty()) throw DomainError("piecewise function needs at least one nonempty piece");
  if (pieces_.front().lo > kGap || pieces_.back().hi < 1.0 - kGap)
    throw DomainError("pieces must cover (0, 1)");
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    if (std::fabs(pieces_[i].lo - pieces_[i - 1].hi) > kGap)
      throw DomainError("pieces must be ordered and contiguous");
  pieces_.front().lo = 0.0;
  pieces_.back().hi = 1.0;
  for (std::size_t i = 1; i < pieces_.size(); ++i) pieces_[i].lo = pieces_[i - 1].hi;
  for (const Piece& p : pieces_)
    if (!(p.hi > p.lo)) throw DomainError("pieces must be ordered and contiguous");
}

double PiecewiseLogStep::operator()(double t) const
{
  if (!(t > 0.0 && t < 1.0)) throw DomainError("piecewise function is defined on (0, 1)");
  // Pieces are half-open (lo, hi].
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                             [](const Piece& p, double v) { return p.hi < v; });
  if (it == pieces_.end()) --it;
  return (*it)(t);
}

PiecewiseLogStep PiecewiseLogStep::shifted(double c) const
{
  std::vector<Piece> out = pieces_;
  for (Piece& p : out)
    std::visit(Overloaded{[c](Constant& k) { k.c += c; }, [c](LogRamp& r) { r.u += c; }}, p.kind);
  return PiecewiseLogStep(std::move(out));
}

PiecewiseLogStep PiecewiseLogStep::scaled(double s) const
{
  std::vector<Piece> out = pieces_;
  for (Piece& p : out)
    std::visit(Overloaded{[s](Constant& k) { k.c *= s; },
                          [s](LogRamp& r) {
                            r.u *= s;
                            r.xi *= s;
                          }},
               p.kind);
  return PiecewiseLogStep(std::move(out));
}

std::vector<double> PiecewiseLogStep::breakpoints() const
{
  std::vector<double> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) out.push_back(pieces_[i].lo);
  return out;
}

double apply(const FunctionKind& f, double s)
{
  return std::visit(Overloaded{
                        [s](const AbsPower& k) { return std::pow(std::fabs(s), k.p); },
                        [s](const Square&) { return s * s; },
                        [s](const ExpScaled& k) { return std::exp(k.delta * s); },
                        [s](const IndicatorAtLeast& k) { return s >= k.level ? 1.0 : 0.0; },
                    },
                    f);
}

PiecewiseLogStep phi_plus(Point x, const DomainParams& params)
{
  require_domain(x, params, "phi_plus");
  return tangent_ramp(x, params, Branch::plus);
}

PiecewiseLogStep phi_minus(Point x, const DomainParams& params)
{
  require_domain(x, params, "phi_minus");
  return tangent_ramp(x, params, Branch::minus);
}

PiecewiseLogStep psi_in_region(Point x, RegionB1 region, const DomainParams& params)
{
  require_domain(x, params, "psi");
  if (params.trivial() || near_lower_boundary(x)) return PiecewiseLogStep({constant(0.0, 1.0, x.x1)});
  const double spread = params.spread();
  switch (region) {
    case RegionB1::omega_plus: {
      const double u = solve_u(x, params, Branch::plus);
      const double beta = std::clamp((x.x1 - u) / spread, 0.0, 1.0);
      return PiecewiseLogStep({constant(0.0, beta, u + spread), constant(beta, 1.0, u)});
    }
    case RegionB1::omega_minus: {
      const double u = solve_u(x, params, Branch::minus);
      const double beta = std::clamp((u - x.x1) / spread, 0.0, 1.0);
      return PiecewiseLogStep({constant(0.0, 1.0 - beta, u), constant(1.0 - beta, 1.0, u - spread)});
    }
    case RegionB1::omega_zero: break;
  }
  const double base = (x.x2 - 1.0) * params.one_minus_xi_minus * params.one_minus_xi_plus;
  const double g_plus = std::clamp((base - x.x1 * params.one_minus_xi_plus) / (spread * spread), 0.0, 1.0);
  const double g_minus =
      std::clamp((base - x.x1 * params.one_minus_xi_minus) / (spread * spread), 0.0, 1.0 - g_plus);
  return PiecewiseLogStep({constant(0.0, g_plus, spread), constant(g_plus, 1.0 - g_minus, 0.0),
                           constant(1.0 - g_minus, 1.0, -spread)});
}

PiecewiseLogStep psi(Point x, const DomainParams& params)
{
  return psi_in_region(x, classify_b1(x, params), params);
}

PiecewiseLogStep eta(Point x, double lambda, const DomainParams& params)
{
  require_domain(x, params, "eta");
  if (params.trivial() || near_lower_boundary(x)) return PiecewiseLogStep({constant(0.0, 1.0, x.x1)});
  const RegionD region = classify_D(x, lambda, params);
  const Point X = shift(x, -lambda);
  switch (region.tag) {
    case RegionDTag::omega4: return psi_in_region(X, RegionB1::omega_plus, params).shifted(lambda);
    case RegionDTag::omega3: return psi_in_region(X, RegionB1::omega_zero, params).shifted(lambda);
    case RegionDTag::omega2: {
      const double v = solve_v(x, lambda, params);
      const double mu = std::clamp((x.x1 - v) / (lambda - v), 0.0, 1.0);
      return PiecewiseLogStep({constant(0.0, mu, lambda), constant(mu, 1.0, v)});
    }
    case RegionDTag::omega1: break;
  }
  const double xp = params.xi_plus;
  const double spread = params.spread();
  const double u = solve_u(x, params, Branch::plus);
  const double alpha = std::clamp((x.x1 - u) / xp, 0.0, 1.0);
  const double beta = std::clamp((x.x1 - u) / spread, 0.0, 1.0);
  const double tau = std::min(1.0, std::exp((u + spread - lambda) / xp));
  return PiecewiseLogStep({constant(0.0, tau * beta, lambda), constant(tau * beta, tau * alpha, lambda - spread),
                           Piece{tau * alpha, alpha, LogRamp{u, xp, alpha}}, constant(alpha, 1.0, u)});
}

PiecewiseLogStep log_reciprocal(double scale) { return PiecewiseLogStep({Piece{0.0, 1.0, LogRamp{0.0, scale, 1.0}}}); }

PiecewiseLogStep cutoff(const PiecewiseLogStep& phi, double c, double d)
{
  if (!(c < d) || std::isnan(c) || std::isnan(d)) throw DomainError("cutoff: need c < d");
  std::vector<Piece> out;
  auto push = [&out](double lo, double hi, std::variant<Constant, LogRamp> kind) {
    if (hi > lo) out.push_back(Piece{lo, hi, kind});
  };
  for (const Piece& piece : phi.pieces()) {
    if (const auto* k = std::get_if<Constant>(&piece.kind)) {
      push(piece.lo, piece.hi, Constant{std::clamp(k->c, c, d)});
      continue;
    }
    const LogRamp& r = std::get<LogRamp>(piece.kind);
    if (is_flat(r)) {
      push(piece.lo, piece.hi, Constant{std::clamp(r.u, c, d)});
      continue;
    }
    const double at_c = ramp_crossing(r, c);
    const double at_d = ramp_crossing(r, d);
    // Decreasing ramps are >= d first; increasing ramps are <= c first.
    const double first = r.xi > 0.0 ? at_d : at_c;
    const double second = r.xi > 0.0 ? at_c : at_d;
    const double first_level = r.xi > 0.0 ? d : c;
    const double second_level = r.xi > 0.0 ? c : d;
    const double m1 = std::clamp(first, piece.lo, piece.hi);
    const double m2 = std::clamp(second, m1, piece.hi);
    push(piece.lo, m1, Constant{first_level});
    push(m1, m2, r);
    push(m2, piece.hi, Constant{second_level});
  }
  return PiecewiseLogStep(std::move(out));
}

MeanAndExp mean_and_exp(const PiecewiseLogStep& phi, Interval J, double delta)
{
  require_interval(J);
  const double len = J.length();
  const double mean = accumulate(phi, J, integral_identity) / len;
  const double e = accumulate(phi, J, [delta](const Piece& p, double s, double t) { return integral_exp(p, delta, s, t); });
  return {mean, e / len};
}

double abs_power_mean(const PiecewiseLogStep& phi, double p, double c, Interval J)
{
  require_interval(J);
  if (!(p > 0.0)) throw DomainError("abs_power_mean: p must be positive");
  return accumulate(phi, J, [p, c](const Piece& piece, double s, double t) {
           return integral_abs_power(piece, p, c, s, t);
         }) /
         J.length();
}

double measure_above(const PiecewiseLogStep& phi, double level, Interval J)
{
  require_interval(J);
  return accumulate(phi, J, [level](const Piece& p, double s, double t) { return measure_ge(p, level, s, t); });
}

double measure_below(const PiecewiseLogStep& phi, double level, Interval J)
{
  require_interval(J);
  return accumulate(phi, J, [level](const Piece& p, double s, double t) { return measure_le(p, level, s, t); });
}

AverageTriple averages(const PiecewiseLogStep& phi, const FunctionKind& f, Interval J)
{
  const MeanAndExp me = mean_and_exp(phi, J);
  AverageTriple out;
  out.mean = me.mean;
  out.exp_mean = me.exp_mean;
  out.exp_infinite = std::isinf(me.exp_mean);
  out.method = AverageMethod::closed_form;
  out.f_mean = std::visit(Overloaded{
                              [&](const AbsPower& k) { return abs_power_mean(phi, k.p, 0.0, J); },
                              [&](const Square&) { return abs_power_mean(phi, 2.0, 0.0, J); },
                              [&](const ExpScaled& k) { return mean_and_exp(phi, J, k.delta).exp_mean; },
                              [&](const IndicatorAtLeast& k) { return measure_above(phi, k.level, J) / J.length(); },
                          },
                          f);
  out.f_infinite = std::isinf(out.f_mean);
  return out;
}

}  // namespace jnb
