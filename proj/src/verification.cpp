#include "jnbellman/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "jnbellman/errors.hpp"
#include "jnbellman/serialization.hpp"

namespace jnb {

namespace {

using json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double uniform(std::mt19937_64& rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

json kind_json(const CandidateKind& kind)
{
  json j{{"candidate", name_of(kind)}};
  std::visit(Overloaded{[&](const LowerP& k) { j["p"] = k.p; }, [](const UpperSquare&) {},
                        [&](const ExpDelta& k) { j["delta"] = k.delta; },
                        [&](const WeakType& k) { j["lambda"] = k.lambda; }},
             kind);
  return j;
}

// C for which delta xi+(C) < 1: C < e^{-1/delta} / (1 - 1/delta).
double exp_candidate_C_cap(double delta)
{
  if (delta <= 1.0) return kInf;
  return std::exp(-1.0 / delta) / (1.0 - 1.0 / delta);
}

// Random C for which the candidate is defined and identified with the Bellman function.
double sample_C_for(std::mt19937_64& rng, const CandidateKind& kind, double hi)
{
  double lo = 1.01;
  if (const auto* k = std::get_if<LowerP>(&kind); k && k->p > 1.0) lo = std::max(lo, lower_p_threshold(k->p));
  if (const auto* k = std::get_if<ExpDelta>(&kind)) hi = std::min(hi, 1.0 + (exp_candidate_C_cap(k->delta) - 1.0) * 0.999);
  if (!(hi > lo)) throw DomainError("no admissible C range for " + std::string(name_of(kind)));
  return sample_C(rng, lo, hi);
}

double eval_finite(const CandidateKind& kind, Point x, const DomainParams& params)
{
  const CandidateValue v = evaluate(kind, x, params);
  return v.infinite ? kInf : v.value;
}

}  // namespace

double sample_C(std::mt19937_64& rng, double lo, double hi)
{
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

Point sample_point(std::mt19937_64& rng, const DomainParams& params, double lo, double hi)
{
  const double x1 = uniform(rng, lo, hi);
  const double log_C = std::log(params.C);
  const double r = uniform(rng, 0.0, 1.0);
  const int mode = std::uniform_int_distribution<int>(0, 7)(rng);
  double h = r * log_C;
  if (mode == 0) h = 1e-3 * r * log_C;
  if (mode == 1) h = (1.0 - 1e-3 * r) * log_C;
  return {x1, std::exp(x1 + h)};
}

SampledOptimizer sample_optimizer(std::mt19937_64& rng, double C_lo, double C_hi)
{
  const DomainParams params = solve_xi(sample_C(rng, C_lo, C_hi));
  const Point x = sample_point(rng, params);
  const double lambda = x.x1 + uniform(rng, -3.0, 3.0);
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return {"phi+", params, x, lambda, phi_plus(x, params)};
    case 1: return {"phi-", params, x, lambda, phi_minus(x, params)};
    case 2: return {"psi", params, x, lambda, psi(x, params)};
    default: return {"eta", params, x, lambda, eta(x, lambda, params)};
  }
}

FunctionKind integrand_of(const CandidateKind& kind)
{
  return std::visit(Overloaded{[](const LowerP& k) -> FunctionKind { return AbsPower{k.p}; },
                               [](const UpperSquare&) -> FunctionKind { return Square{}; },
                               [](const ExpDelta& k) -> FunctionKind { return ExpScaled{k.delta}; },
                               [](const WeakType& k) -> FunctionKind { return IndicatorAtLeast{k.lambda}; }},
                    kind);
}

VerificationReport check_boundary_values(int samples, std::uint64_t seed, double tol)
{
  ReportBuilder report("boundary", tol);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    const DomainParams params = solve_xi(sample_C(rng, 1.01, 1000.0));
    const double t = uniform(rng, -5.0, 5.0);
    const Point x{t, std::exp(t)};
    const double delta = params.xi_plus < 1.0 ? uniform(rng, 1.0, 1.0 / params.xi_plus) : 1.0;
    const std::array<CandidateKind, 6> kinds{LowerP{1.0}, LowerP{uniform(rng, 1.0, 2.0)}, UpperSquare{},
                                             ExpDelta{delta}, WeakType{t + uniform(rng, -1.0, 1.0)},
                                             WeakType{t}};
    for (const CandidateKind& kind : kinds) {
      const double g = eval_finite(kind, x, params);
      const double f = boundary_value(kind, t);
      report.record(rel_err(g, f), [&] {
        json j = kind_json(kind);
        j["C"] = params.C;
        j["t"] = t;
        return j;
      });
    }
  }
  return report.finish();
}

VerificationReport check_optimizers(int cases, std::uint64_t seed, double tol)
{
  ReportBuilder report("optimizers", tol);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const DomainParams params = solve_xi(sample_C(rng, 1.01, 1000.0));
    const Point x = sample_point(rng, params);
    const double p = uniform(rng, 1.0, 2.0);
    const double lambda = x.x1 + uniform(rng, -3.0, 3.0);
    struct Case {
      const char* name;
      PiecewiseLogStep phi;
      CandidateKind kind;
    };
    std::vector<Case> family{{"phi+", phi_plus(x, params), LowerP{p}},
                             {"phi-", phi_minus(x, params), UpperSquare{}},
                             {"psi", psi(x, params), LowerP{1.0}},
                             {"eta", eta(x, lambda, params), WeakType{lambda}}};
    if (params.xi_plus < 1.0 / 1.0001) {
      const double delta = uniform(rng, 1.0, 1.0 / params.xi_plus);
      if (delta * params.xi_plus < 1.0 - 1e-6) family.push_back({"phi+", phi_plus(x, params), ExpDelta{delta}});
    }
    for (const Case& c : family) {
      const FunctionKind f = integrand_of(c.kind);
      const AverageTriple closed = averages(c.phi, f);
      const AverageTriple oracle = averages_by_quadrature(c.phi, f);
      const double target = evaluate(c.kind, x, params).value;
      const double residual = std::max({rel_err(closed.mean, x.x1), std::fabs(closed.exp_mean - x.x2) / x.x2,
                                        rel_err(closed.f_mean, target), rel_err(oracle.mean, closed.mean),
                                        std::fabs(oracle.exp_mean - closed.exp_mean) / closed.exp_mean,
                                        rel_err(oracle.f_mean, closed.f_mean)});
      report.record(residual, [&] {
        json j = kind_json(c.kind);
        j["optimizer"] = c.name;
        j["C"] = params.C;
        j["x"] = to_json(x);
        j["closed"] = to_json(closed);
        j["quadrature"] = to_json(oracle);
        j["candidate"] = target;
        return j;
      });
    }
  }
  return report.finish();
}

VerificationReport check_admissibility(int cases, const ScanConfig& cfg, double tol)
{
  ReportBuilder report("admissibility", tol);
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cases; ++i) {
    const SampledOptimizer s = sample_optimizer(rng, 1.01, 1000.0);
    const ScanResult scan = scan_ainfty(s.phi, cfg);
    report.record(scan.value / s.params.C - 1.0, [&] {
      return json{{"optimizer", s.kind}, {"C", s.params.C},      {"x", to_json(s.x)},
                  {"lambda", s.lambda},  {"scanned", scan.value}, {"interval", {scan.witness.a, scan.witness.b}}};
    });
  }
  report.add_flag("scan family: dyadic depth " + std::to_string(cfg.grid_depth) +
                  (cfg.geometric_refine_at_zero ? " + geometric at 0" : "") +
                  (cfg.breakpoint_refine ? " + breakpoint-centred" : ""));
  return report.finish();
}

VerificationReport certify_local_convexity(const CandidateKind& family, int segments, std::uint64_t seed,
                                           double tol)
{
  ReportBuilder report(std::string("convexity/") + name_of(family), tol);
  std::mt19937_64 rng(seed);
  const int sign = concavity_sign(family);
  int accepted = 0;
  long attempts = 0;
  while (accepted < segments && attempts < 200L * segments) {
    ++attempts;
    const DomainParams params = solve_xi(sample_C_for(rng, family, 1000.0));
    const Point a = sample_point(rng, params);
    const double reach = std::exp(uniform(rng, std::log(1e-3), std::log(2.0)));
    const double b1 = std::clamp(a.x1 + uniform(rng, -reach, reach), -3.0, 3.0);
    const Point b{b1, std::exp(b1 + uniform(rng, 0.0, std::log(params.C)))};
    if (!segment_in_domain(a, b, params.C)) continue;
    const double alpha = uniform(rng, 0.0, 1.0);
    const Point m{alpha * a.x1 + (1.0 - alpha) * b.x1, alpha * a.x2 + (1.0 - alpha) * b.x2};
    if (!in_domain(m, params)) continue;
    ++accepted;
    const double ga = eval_finite(family, a, params);
    const double gb = eval_finite(family, b, params);
    const double gm = eval_finite(family, m, params);
    const double chord = alpha * ga + (1.0 - alpha) * gb;
    const double slack = sign > 0 ? gm - chord : chord - gm;
    const double scale = std::max({1.0, std::fabs(ga), std::fabs(gb), std::fabs(gm)});
    report.record(-slack / scale, [&] {
      json j = kind_json(family);
      j["C"] = params.C;
      j["a"] = to_json(a);
      j["b"] = to_json(b);
      j["alpha"] = alpha;
      j["slack"] = slack;
      return j;
    });
  }
  if (accepted < segments) report.fail("could only place " + std::to_string(accepted) + " segments");
  return report.finish();
}

namespace {

// Index of the smooth piece of the candidate containing x, or -1 when x is
// too close to a place where second derivatives are not continuous.
int smooth_region(const CandidateKind& kind, Point x, const DomainParams& params)
{
  return std::visit(
      Overloaded{
          [&](const LowerP& k) {
            if (k.p == 1.0) return static_cast<int>(classify_b1(x, params));
            const double u = solve_u(x, params, Branch::plus);
            if (std::fabs(u) < 0.1) return -1;
            return u > 0.0 ? 1 : 0;
          },
          [](const UpperSquare&) { return 0; }, [](const ExpDelta&) { return 0; },
          [&](const WeakType& k) {
            const Point X = shift(x, -k.lambda);
            if (std::hypot(X.x1, X.x2 - 1.0) < 0.05) return -1;
            return static_cast<int>(classify_D(x, k.lambda, params).tag);
          },
      },
      kind);
}

int region_count(const CandidateKind& kind)
{
  return std::visit(Overloaded{[](const LowerP& k) { return k.p == 1.0 ? 3 : 2; }, [](const UpperSquare&) { return 1; },
                               [](const ExpDelta&) { return 1; }, [](const WeakType&) { return 4; }},
                    kind);
}

}  // namespace

namespace {

// Stencil {x, x +- h e1, x +- h x2 e2} inside one smooth region, away from
// Gamma_1 and Gamma_C. Returns that region or -1.
int stencil_region(const CandidateKind& kind, Point x, double h, const DomainParams& params)
{
  const double log_C = std::log(params.C);
  int region = -2;
  for (const Point y : {x, Point{x.x1 + h, x.x2}, Point{x.x1 - h, x.x2}, Point{x.x1, x.x2 * (1 + h)}, Point{x.x1, x.x2 * (1 - h)}}) {
    const double height = log_height(y);
    if (height < 10 * h || height > log_C - 10 * h) return -1;
    const int r = smooth_region(kind, y, params);
    if (r < 0 || (region != -2 && r != region)) return -1;
    region = r;
  }
  return region;
}

}  // namespace

VerificationReport check_monge_ampere(const CandidateKind& family, int points, std::uint64_t seed, double tol)
{
  ReportBuilder report(std::string("monge_ampere/") + name_of(family), tol);
  std::mt19937_64 rng(seed);
  const int regions = region_count(family);
  std::vector<int> filled(regions, 0);
  const double h = 1e-5;
  long attempts = 0;
  auto done = [&] { return std::all_of(filled.begin(), filled.end(), [&](int n) { return n >= points; }); };
  while (!done() && attempts < 400L * points * regions) {
    ++attempts;
    const DomainParams params = solve_xi(sample_C_for(rng, family, 1000.0));
    const Point x = sample_point(rng, params);
    const int region = stencil_region(family, x, h, params);
    if (region < 0 || filled[region] >= points) continue;
    ++filled[region];
    // Hessian as the central difference of the closed-form gradient, in the
    // coordinates (x1, x2 / x2(x)) so all entries share one scale.
    const Gradient g0 = gradient(family, x, params);
    const Gradient e1p = gradient(family, {x.x1 + h, x.x2}, params), e1m = gradient(family, {x.x1 - h, x.x2}, params);
    const Gradient e2p = gradient(family, {x.x1, x.x2 * (1 + h)}, params);
    const Gradient e2m = gradient(family, {x.x1, x.x2 * (1 - h)}, params);
    const double s = x.x2;
    const double j11 = (e1p.d1 - e1m.d1) / (2 * h);
    const double j21 = s * (e1p.d2 - e1m.d2) / (2 * h);
    const double j12 = (e2p.d1 - e2m.d1) / (2 * h);
    const double j22 = s * (e2p.d2 - e2m.d2) / (2 * h);
    const double g12 = 0.5 * (j12 + j21);
    // A few ulps of rounding in g differenced over h leave ~1e-10 |g| per
    // entry. Residuals are taken against the Hessian plus that noise / 1e-4,
    // so rounding alone stays below 1e-4 (affine pieces have only rounding).
    const double noise = 1e-6 * std::max({1.0, std::fabs(g0.d1), s * std::fabs(g0.d2)});
    const double floor = noise * noise;
    const double monge_ampere = std::fabs(j11 * j22 - g12 * g12) / (std::fabs(j11 * j22) + g12 * g12 + floor);
    const double symmetry = std::fabs(j12 - j21) / (std::fabs(j11) + std::fabs(j22) + std::fabs(j12) + std::fabs(j21) + noise);
    report.record(std::max(monge_ampere, symmetry), [&] {
      json j = kind_json(family);
      j["C"] = params.C;
      j["x"] = to_json(x);
      j["region"] = region;
      j["hessian_scaled"] = {j11, j12, j21, j22};
      return j;
    });
  }
  for (int r = 0; r < regions; ++r)
    if (filled[r] < points)
      report.add_flag("region " + std::to_string(r) + ": " + std::to_string(filled[r]) + " interior points");
  return report.finish();
}

VerificationReport check_slope_gradients(int points, std::uint64_t seed, double tol)
{
  ReportBuilder report("gradients", tol);
  std::mt19937_64 rng(seed);
  const double h = 1e-5;
  for (int i = 0; i < points; ++i) {
    const DomainParams params = solve_xi(sample_C(rng, 1.01, 100.0));
    const Point x = sample_point(rng, params, -2.0, 2.0);
    const double p = uniform(rng, 1.05, 2.0);
    const double delta = uniform(rng, 1.0, std::max(1.0, 0.999 / params.xi_plus));
    const double lambda = x.x1 + uniform(rng, -1.0, 4.0);
    std::vector<CandidateKind> kinds{LowerP{p}, LowerP{1.0}, UpperSquare{}, WeakType{lambda}};
    if (delta * params.xi_plus < 1.0) kinds.push_back(ExpDelta{delta});
    for (const CandidateKind& kind : kinds) {
      const int region = stencil_region(kind, x, 20 * h, params);
      if (region < 0) continue;
      auto G = [&](Point y) { return eval_finite(kind, y, params); };
      const Gradient exact = gradient(kind, x, params);
      // Richardson-extrapolated central differences: O(h^4), since D curves
      // sharply near (lambda, e^lambda).
      auto central = [&](double k) {
        const double k2 = k * x.x2;
        return Gradient{(G({x.x1 + k, x.x2}) - G({x.x1 - k, x.x2})) / (2 * k),
                        (G({x.x1, x.x2 + k2}) - G({x.x1, x.x2 - k2})) / (2 * k2)};
      };
      const Gradient coarse = central(2 * h), fine = central(h);
      const double d1 = (4 * fine.d1 - coarse.d1) / 3;
      const double d2 = (4 * fine.d2 - coarse.d2) / 3;
      const double scale = std::max({1.0, std::fabs(exact.d1), x.x2 * std::fabs(exact.d2)});
      const double residual = std::max(std::fabs(d1 - exact.d1), x.x2 * std::fabs(d2 - exact.d2)) / scale;
      report.record(residual, [&] {
        json j = kind_json(kind);
        j["C"] = params.C;
        j["x"] = to_json(x);
        j["region"] = region;
        j["exact"] = {exact.d1, exact.d2};
        j["finite_difference"] = {d1, d2};
        return j;
      });
    }
  }
  return report.finish();
}

VerificationReport check_d_gradient_jumps(int points, std::uint64_t seed, double tol)
{
  ReportBuilder report("d_gradient_jumps", tol);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < points; ++i) {
    const DomainParams params = solve_xi(sample_C(rng, 1.05, 100.0));
    const double lambda = uniform(rng, -2.0, 2.0);
    const double xm = params.xi_minus;
    const double xp = params.xi_plus;
    const double t = uniform(rng, 0.05, 0.95);
    // Pieces on omega3 and omega4 are affine, so their gradient is read off
    // anywhere inside; the curved pieces are evaluated on the boundary itself.
    const CandidateKind kind = WeakType{lambda};
    auto inside = [&](Point on, double side) { return gradient(kind, {on.x1, on.x2 * (1.0 + side * 1e-6)}, params); };
    auto omega1 = [&](Point on) { return gradient_D_omega1(on, lambda, params); };
    auto omega2 = [&](Point on) { return gradient_D_omega2(on, lambda, params); };
    auto omega3 = [&](Point on) { return inside(on, 1.0); };
    auto omega4 = [&](Point on) { return inside(on, -1.0); };
    struct Boundary {
      const char* name;
      double X1;
      double slope;
      bool must_vanish;
      std::function<Gradient(Point)> above;
      std::function<Gradient(Point)> below;
    };
    const std::array<Boundary, 3> boundaries{
        Boundary{"omega2|omega1", -params.spread() + t * (xm + params.spread()), params.tangent_slope_minus(), true,
                 omega1, omega2},
        Boundary{"omega2|omega3", t * xm, params.tangent_slope_minus(), false, omega3, omega2},
        Boundary{"omega4|omega3", t * xp, params.tangent_slope_plus(), false, omega3, omega4}};
    for (const Boundary& b : boundaries) {
      const Point on = shift(Point{b.X1, b.slope * b.X1 + 1.0}, lambda);
      // d/dx2 of the pieces above and below; the gradients suite ties them to values.
      const double up = b.above(on).d2;
      const double down = b.below(on).d2;
      const double jump = up - down;
      const double scale = std::max({1.0, std::fabs(up), std::fabs(down)});
      const double residual = (b.must_vanish ? std::fabs(jump) : jump) / scale;
      report.record(residual, [&] {
        return json{{"boundary", b.name}, {"C", params.C},  {"lambda", lambda},
                    {"x", to_json(on)},  {"above", up},     {"below", down}};
      });
    }
  }
  return report.finish();
}

VerificationReport check_cutoff_monotonicity(int cases, const ScanConfig& cfg, double tol)
{
  ReportBuilder report("cutoff", tol);
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cases; ++i) {
    const SampledOptimizer s = sample_optimizer(rng, 1.01, 100.0);
    const double m = mean_and_exp(s.phi).mean;
    const double c = m + uniform(rng, -3.0, 0.5);
    const double d = c + uniform(rng, 0.01, 4.0);
    const PiecewiseLogStep cut = cutoff(s.phi, c, d);
    double worst_scan_phi = 0.0;
    double worst_scan_cut = 0.0;
    for (const Interval& J : scan_family(cut, cfg)) {
      const double before = ainfty_ratio(s.phi, J);
      const double after = ainfty_ratio(cut, J);
      worst_scan_phi = std::max(worst_scan_phi, before);
      worst_scan_cut = std::max(worst_scan_cut, after);
      report.record(after / before - 1.0, [&] {
        return json{{"optimizer", s.kind}, {"C", s.params.C}, {"x", to_json(s.x)}, {"c", c},
                    {"d", d},              {"interval", {J.a, J.b}}, {"before", before}, {"after", after}};
      });
    }
    report.record(worst_scan_cut / worst_scan_phi - 1.0, [&] {
      return json{{"optimizer", s.kind}, {"scanned_before", worst_scan_phi}, {"scanned_after", worst_scan_cut}};
    });
  }
  return report.finish();
}

VerificationReport check_log_family(const std::vector<double>& eps_grid, const ScanConfig& cfg, double tol)
{
  ReportBuilder report("log_family", tol);
  for (double eps : eps_grid) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("check_log_family: eps must lie in (0, 1)");
    const ScanResult scan = scan_ainfty(log_reciprocal(eps), cfg);
    const double exact = std::exp(-eps) / (1.0 - eps);
    report.record(std::fabs(scan.value - exact) / exact, [&] {
      return json{{"eps", eps}, {"scanned", scan.value}, {"exact", exact}, {"interval", {scan.witness.a, scan.witness.b}}};
    });
  }
  return report.finish();
}

VerificationReport check_oracle_equivalence(int cases, std::uint64_t seed, double tol)
{
  ReportBuilder report("oracle_equivalence", tol);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const SampledOptimizer s = sample_optimizer(rng, 1.01, 1000.0);
    double a = uniform(rng, 0.0, 1.0);
    double b = uniform(rng, 0.0, 1.0);
    if (a > b) std::swap(a, b);
    if (uniform(rng, 0.0, 1.0) < 0.25) a = 0.0;
    if (b - a < 1e-6) b = std::min(1.0, a + 1e-3);
    const Interval J{a, b};
    const double level = s.x.x1 + uniform(rng, -2.0, 2.0);
    const std::array<FunctionKind, 4> fs{AbsPower{uniform(rng, 1.0, 2.0)}, Square{}, ExpScaled{uniform(rng, 0.2, 1.0)},
                                         IndicatorAtLeast{level}};
    for (const FunctionKind& f : fs) {
      const AverageTriple closed = averages(s.phi, f, J);
      const AverageTriple oracle = averages_by_quadrature(s.phi, f, J);
      const double jensen = std::exp(closed.mean) / closed.exp_mean - 1.0;  // <= 0
      const double residual =
          std::max({rel_err(oracle.mean, closed.mean), std::fabs(oracle.exp_mean / closed.exp_mean - 1.0),
                    rel_err(oracle.f_mean, closed.f_mean), jensen - 1e-14});
      report.record(residual, [&] {
        return json{{"optimizer", s.kind}, {"C", s.params.C},        {"x", to_json(s.x)},
                    {"interval", {a, b}},  {"closed", to_json(closed)}, {"quadrature", to_json(oracle)}};
      });
    }
  }
  return report.finish();
}

}  // namespace jnb
