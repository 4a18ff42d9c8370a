#include "jnbellman/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jnbellman/bellman_candidates.hpp"
#include "jnbellman/errors.hpp"
#include "jnbellman/serialization.hpp"

namespace jnb {

namespace {

using json = nlohmann::ordered_json;

double uniform(std::mt19937_64& rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

json interval_json(Interval J) { return json::array({J.a, J.b}); }

}  // namespace

VerificationReport check_theorem_t3(double C, const ScanConfig& cfg, double tol)
{
  if (!(C >= 1.0)) throw DomainError("check_theorem_t3: C must be >= 1");
  ReportBuilder report("t3", tol);
  const DomainParams params = solve_xi(C);
  const PiecewiseLogStep extremal = log_reciprocal(params.xi_plus);

  const ScanResult chr = scan_ainfty(extremal, cfg);
  report.record(std::fabs(chr.value - C) / C, [&] {
    return json{{"check", "characteristic of xi+ log(1/t)"}, {"C", C}, {"scanned", chr.value}};
  });
  for (double p : {1.25, 1.5, 1.75, 2.0}) {
    if (C < lower_p_threshold(p)) {
      report.add_flag("skipped p = " + format_number(p, 6) + ": C below e^{p-2}/(p-1)");
      continue;
    }
    const ScanResult norm = scan_bmo_norm(extremal, p, cfg);
    const double expected = eps0(p) * params.xi_plus;
    report.record(std::fabs(norm.value - expected), [&] {
      return json{{"check", "BMO^p norm of xi+ log(1/t)"}, {"C", C}, {"p", p}, {"scanned", norm.value}, {"expected", expected}};
    });
  }

  // Two-sided BMO^2 bound for optimizers, against their own scanned characteristic.
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cfg.samples; ++i) {
    const Point x = sample_point(rng, params);
    const bool plus = i % 2 == 0;
    const PiecewiseLogStep phi = plus ? phi_plus(x, params) : phi_minus(x, params);
    const double own_C = std::max(1.0, scan_ainfty(phi, cfg).value);
    const DomainParams own = solve_xi(own_C);
    const double norm = scan_bmo_norm(phi, 2.0, cfg).value;
    const double residual = std::max(own.xi_plus - norm, norm + own.xi_minus);
    report.record(residual, [&] {
      return json{{"check", "xi+ <= BMO^2 norm <= |xi-|"}, {"optimizer", plus ? "phi+" : "phi-"}, {"C", C},
                  {"x", to_json(x)}, {"characteristic", own_C}, {"norm", norm},
                  {"xi_plus", own.xi_plus}, {"xi_minus", own.xi_minus}};
    });
  }

  // p = 1: the oscillation over (0, 1) is exactly k(C); the norm can be larger.
  const PiecewiseLogStep step = psi({0.0, C}, params);
  const double k = k_of_C(params);
  const double full = abs_power_mean(step, 1.0, mean_and_exp(step).mean, {0.0, 1.0});
  report.record(std::fabs(full - k), [&] {
    return json{{"check", "oscillation of psi at (0, C) over (0, 1)"}, {"C", C}, {"oscillation", full}, {"k", k}};
  });
  const ScanResult norm1 = scan_bmo_norm(step, 1.0, cfg);
  report.record(k - norm1.value, [&] {
    return json{{"check", "BMO^1 norm of psi at (0, C) >= k(C)"}, {"C", C}, {"norm", norm1.value}, {"k", k}};
  });
  report.add_flag("p = 1: scanned BMO^1 norm of psi at (0, C) is " + format_number(norm1.value, 8) + " on (" +
                  format_number(norm1.witness.a, 6) + ", " + format_number(norm1.witness.b, 6) + "), k(C) = " +
                  format_number(k, 8));
  return report.finish();
}

VerificationReport check_theorem_t7(double C, const std::vector<double>& delta_grid, const ScanConfig& cfg, double tol)
{
  if (!(C >= 1.0)) throw DomainError("check_theorem_t7: C must be >= 1");
  ReportBuilder report("t7", tol);
  const DomainParams params = solve_xi(C);
  const PiecewiseLogStep phi = log_reciprocal(params.xi_plus);
  double largest = 0.0;
  for (double delta : delta_grid) {
    if (!(delta >= 1.0 && delta * params.xi_plus < 1.0)) {
      report.add_flag("skipped delta = " + format_number(delta, 6) + " outside [1, 1/xi+)");
      continue;
    }
    const double k = delta * params.xi_plus;
    const double bound = std::exp(-k) / (1.0 - k);
    largest = std::max(largest, bound);
    const ScanResult scan = scan_ainfty(phi, cfg, delta);
    report.record(std::fabs(scan.value - bound) / bound, [&] {
      return json{{"C", C}, {"delta", delta}, {"scanned", scan.value}, {"bound", bound}, {"interval", interval_json(scan.witness)}};
    });
  }
  report.add_flag("largest bound on the grid " + format_number(largest, 8));
  return report.finish();
}

VerificationReport check_theorem_t8(double C, const std::vector<double>& lambda_grid, const ScanConfig& cfg, double tol)
{
  if (!(C >= 1.0)) throw DomainError("check_theorem_t8: C must be >= 1");
  ReportBuilder report("t8", tol);
  const DomainParams params = solve_xi(C);
  for (double lambda : lambda_grid) {
    Point x{0.0, C};
    if (lambda <= 0.0)
      x = {0.0, 1.0};
    else if (lambda <= -params.xi_minus)
      x = {0.0, std::exp(lambda) * (1.0 - lambda * params.tangent_slope_minus())};
    const PiecewiseLogStep opt = eta(x, lambda, params);
    // <eta> = x1 = 0; the level is taken exactly so atoms at lambda count.
    const double attained = measure_above(opt, lambda);
    const double envelope = max_D_over_vertical(lambda, params).envelope;
    report.record(std::fabs(attained - envelope), [&] {
      return json{{"check", "attained"}, {"C", C}, {"lambda", lambda}, {"x", to_json(x)}, {"measure", attained}, {"envelope", envelope}};
    });
  }
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cfg.samples; ++i) {
    const SampledOptimizer s = sample_optimizer(rng, C, C);
    double a = uniform(rng, 0.0, 1.0);
    double b = uniform(rng, 0.0, 1.0);
    if (a > b) std::swap(a, b);
    const int shape = i % 3;
    if (shape == 0) a = 0.0;
    if (b - a < 1e-9) continue;
    const Interval J{a, b};
    const double lambda = uniform(rng, -1.0, 3.0 * (params.xi_plus - params.xi_minus));
    const double m = mean_and_exp(s.phi, J).mean;
    const double measure = measure_above(s.phi, m + lambda, J) / J.length();
    const double envelope = max_D_over_vertical(lambda, params).envelope;
    report.record(measure - envelope, [&] {
      return json{{"check", "dominated"}, {"optimizer", s.kind}, {"C", C}, {"x", to_json(s.x)}, {"eta_lambda", s.lambda},
                  {"interval", interval_json(J)}, {"lambda", lambda}, {"measure", measure}, {"envelope", envelope}};
    });
  }
  return report.finish();
}

VerificationReport check_weak_jn(double p, const PiecewiseLogStep& phi, const std::vector<double>& lambda_grid,
                                 const ScanConfig& cfg, double tol)
{
  if (!(p > 1.0 && p <= 2.0)) throw DomainError("check_weak_jn: p must lie in (1, 2]");
  ReportBuilder report("weak_jn", tol);
  const ScanResult norm = scan_bmo_norm(phi, p, cfg);
  if (!(norm.value > 1e-300)) throw DomainError("check_weak_jn: the function has zero BMO^p norm");
  std::vector<double> bounds;
  for (double lambda : lambda_grid) {
    if (!(lambda >= 0.0)) throw DomainError("check_weak_jn: lambda must be >= 0");
    bounds.push_back(weak_type_bound(p, lambda, norm.value));
  }
  for (const Interval& J : scan_family(phi, cfg)) {
    const double m = mean_and_exp(phi, J, 0.0).mean;
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
      const double lambda = lambda_grid[i];
      const double tail = lambda == 0.0 ? 1.0
                                        : std::min(1.0, (measure_above(phi, m + lambda, J) +
                                                         measure_below(phi, m - lambda, J)) / J.length());
      const double bound = bounds[i];
      report.record(tail - bound, [&] {
        return json{{"p", p}, {"lambda", lambda}, {"interval", interval_json(J)}, {"tail", tail}, {"bound", bound}, {"norm", norm.value}};
      });
    }
  }
  return report.finish();
}

VerificationReport check_theorem_main(double p, const std::vector<double>& C_grid, const ScanConfig&)
{
  if (!(p >= 1.0 && p <= 2.0)) throw DomainError("check_theorem_main: p must lie in [1, 2]");
  for (std::size_t i = 1; i < C_grid.size(); ++i)
    if (!(C_grid[i] > C_grid[i - 1])) throw DomainError("check_theorem_main: C grid must increase");
  const double e0 = eps0(p);
  const double C0 = p > 1.0 ? lower_p_threshold(p) : 1.0;
  auto G = [p](double C) {
    const DomainParams params = solve_xi(C);
    const Point top{0.0, C};
    return p == 1.0 ? eval_b_1(top, params) : std::pow(eval_b_p(top, p, params).value, 1.0 / p);
  };
  std::vector<double> values;
  for (double C : C_grid) values.push_back(G(C));

  ReportBuilder monotone("main/monotone", 0.0);
  for (std::size_t i = 1; i < C_grid.size(); ++i) {
    if (C_grid[i - 1] < C0) continue;
    monotone.record((values[i - 1] - values[i]) / values[i - 1], [&] {
      return json{{"p", p}, {"C", {C_grid[i - 1], C_grid[i]}}, {"G", {values[i - 1], values[i]}}};
    });
  }

  ReportBuilder limit("main/limit", 1e-3);
  for (std::size_t i = 0; i < C_grid.size(); ++i) {
    if (C_grid[i] < 1e6) continue;
    limit.record(std::fabs(values[i] - e0), [&] { return json{{"p", p}, {"C", C_grid[i]}, {"G", values[i]}, {"eps0", e0}}; });
  }

  // The inverse is ill-conditioned for large C (dC/C ~ e C dG), so the
  // relative error is divided by C.
  ReportBuilder inverse("main/inverse", 1e-9);
  for (std::size_t i = 0; i < C_grid.size(); ++i) {
    const double C = C_grid[i];
    if (C < C0 || C == 1.0 || values[i] >= e0) continue;
    const double back = p == 1.0 ? k_inverse(values[i]) : jn_sharp_C(values[i], p);
    inverse.record(std::fabs(back / C - 1.0) / C, [&] { return json{{"p", p}, {"C", C}, {"G", values[i]}, {"inverse", back}}; });
  }

  ReportBuilder report("main", 0.0);
  for (const VerificationReport& part : {monotone.finish(), limit.finish(), inverse.finish()})
    if (part.checks > 0) report.merge(part);
  return report.finish();
}

}  // namespace jnb
