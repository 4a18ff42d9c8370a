// One PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.
// A criterion passes only if its numeric check passes within the pinned
// tolerance and it finishes within its runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "jnbellman/bellman_candidates.hpp"
#include "jnbellman/induction.hpp"
#include "jnbellman/quadrature.hpp"
#include "jnbellman/serialization.hpp"
#include "jnbellman/theorems.hpp"
#include "jnbellman/verification.hpp"

using namespace jnb;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::vector<double> linspace(double lo, double hi, int n)
{
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

std::string describe(const VerificationReport& r)
{
  std::string s = r.name + ": worst " + format_number(r.worst_residual, 3) + " (tol " + format_number(r.tolerance_used, 3) +
                  ", " + std::to_string(r.checks) + " checks)";
  if (!r.passed) s += " witness " + r.worst_witness.dump();
  return s;
}

Outcome from_reports(const std::vector<VerificationReport>& reports)
{
  Outcome out{true, ""};
  for (const auto& r : reports) {
    out.passed = out.passed && r.passed;
    if (!r.passed || out.detail.size() < 200) out.detail += (out.detail.empty() ? "" : "; ") + describe(r);
  }
  return out;
}

Outcome endpoint_constants()
{
  const double e1 = std::abs(eps0(1.0) - 2.0 / std::numbers::e);
  const double e2 = std::abs(eps0(2.0) - 1.0);
  return {e1 <= 1e-12 && e2 <= 1e-12, "|eps0(1) - 2/e| = " + format_number(e1, 3) + ", |eps0(2) - 1| = " + format_number(e2, 3)};
}

Outcome sharp_C_at_p2()
{
  double worst_formula = 0.0, worst_quadrature = 0.0;
  for (double eps : linspace(0.0, 0.99, 100)) {
    const double F = std::exp(-eps) / (1.0 - eps);
    worst_formula = std::max(worst_formula, std::abs(jn_sharp_C(eps, 2.0) - F) / F);
    // <e^{eps (phi0 - <phi0>)}> with phi0 = log(1/t), <phi0> = 1.
    const AverageTriple q = averages_by_quadrature(log_reciprocal(eps).shifted(-eps), Square{});
    worst_quadrature = std::max(worst_quadrature, std::abs(q.exp_mean - F) / F);
  }
  return {worst_formula <= 1e-12 && worst_quadrature <= 1e-8,
          "formula rel err " + format_number(worst_formula, 3) + ", quadrature rel err " + format_number(worst_quadrature, 3)};
}

Outcome omega_identity()
{
  double worst = 0.0;
  for (double p : linspace(1.0, 2.0, 9)) {
    // t = e^{-y}: int_0^1 |log t + 1|^p dt = int_0^inf |1 - y|^p e^{-y} dy.
    auto f = [p](double y) { return std::pow(std::abs(1.0 - y), p) * std::exp(-y); };
    const quad::Options opt{1e-15, 1e-13, 2000};
    const double integral = quad::integrate(f, 0.0, 1.0, opt).value + quad::integrate_to_infinity(f, 1.0, 1.0, opt).value;
    worst = std::max(worst, std::abs(std::pow(omega(p), p) - integral));
  }
  return {worst <= 1e-8, "max |omega^p - integral| = " + format_number(worst, 3)};
}

Outcome optimizer_optimality() { return from_reports({check_optimizers(1000, 1, 1e-8)}); }

Outcome admissibility()
{
  ScanConfig cfg;
  cfg.grid_depth = 14;
  const VerificationReport all = check_admissibility(1000, cfg, 1e-6);
  double worst_top = 0.0;
  for (double C : {1.01, 1.5, 2.0, 10.0, 100.0, 1000.0}) {
    const DomainParams d = solve_xi(C);
    worst_top = std::max(worst_top, std::abs(scan_ainfty(phi_plus({0.0, C}, d), cfg).value - C) / C);
  }
  Outcome out = from_reports({all});
  out.passed = out.passed && worst_top <= 1e-4;
  out.detail += "; phi+ at (0, C) attains C to rel " + format_number(worst_top, 3);
  return out;
}

Outcome convexity()
{
  std::vector<VerificationReport> reports;
  const std::vector<CandidateKind> kinds{LowerP{1.0}, LowerP{1.25}, LowerP{1.5}, LowerP{1.75}, LowerP{2.0}, UpperSquare{},
                                         ExpDelta{1.0}, ExpDelta{1.3}, WeakType{0.0}, WeakType{1.0}};
  for (const auto& k : kinds) reports.push_back(certify_local_convexity(k, 10000, 1, 1e-9));
  for (const auto& k : kinds) reports.push_back(check_monge_ampere(k, 1000, 1, 1e-4));
  return from_reports(reports);
}

Outcome t8_envelope()
{
  ScanConfig cfg;
  cfg.samples = 10000;
  std::vector<VerificationReport> reports;
  for (double C : {1.5, 2.0, 10.0}) {
    const DomainParams d = solve_xi(C);
    reports.push_back(check_theorem_t8(C, linspace(-1.0, 3.0 * d.spread(), 50), cfg, 1e-6));
  }
  return from_reports(reports);
}

Outcome t7_powers()
{
  const DomainParams d = solve_xi(2.0);
  const double top = 1.0 / d.xi_plus;
  std::vector<double> deltas;
  for (int i = 0; i < 20; ++i) deltas.push_back(1.0 + (top - 1.0) * i / 20.0);
  ScanConfig cfg;
  return from_reports({check_theorem_t7(2.0, deltas, cfg, 1e-3)});
}

Outcome induction_replay()
{
  ScanConfig cfg;
  return from_reports({check_induction_family(100, 32, 10, 1.05, cfg)});
}

Outcome main_asymptotics()
{
  std::vector<double> grid;
  for (int i = 0; i < 200; ++i) grid.push_back(std::exp(std::log(1.001) + (std::log(1e6) - std::log(1.001)) * i / 199.0));
  ScanConfig cfg;
  std::vector<VerificationReport> reports;
  for (double p : {1.0, 1.5, 2.0}) reports.push_back(check_theorem_main(p, grid, cfg));
  return from_reports(reports);
}

Outcome weak_type()
{
  ScanConfig cfg;
  std::mt19937_64 rng(1);
  std::vector<PiecewiseLogStep> functions{log_reciprocal()};
  while (functions.size() < 101) {
    SampledOptimizer s = sample_optimizer(rng, 1.01, 1000.0);
    // Optimizers at points of Gamma_1 are constants, which the inequality excludes.
    if (scan_bmo_norm(s.phi, 1.0, cfg).value > 1e-9) functions.push_back(std::move(s.phi));
  }
  std::vector<VerificationReport> reports;
  const std::vector<double> lambdas = linspace(0.0, 10.0, 50);
  for (double p : {1.25, 1.5, 1.75, 2.0}) {
    ReportBuilder merged("weak_jn p=" + format_number(p, 3), 1e-12);
    for (const auto& phi : functions) merged.merge(check_weak_jn(p, phi, lambdas, cfg, 1e-12), false);
    reports.push_back(merged.finish());
  }
  return from_reports(reports);
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main()
{
  const std::vector<Criterion> criteria{
      {"1 endpoint constants", 1.0, endpoint_constants},
      {"2 sharp C(eps,2)", 5.0, sharp_C_at_p2},
      {"3 omega identity", 5.0, omega_identity},
      {"4 optimizer optimality", 60.0, optimizer_optimality},
      {"5 admissibility", 60.0, admissibility},
      {"6 convexity and Monge-Ampere", 120.0, convexity},
      {"7 distribution envelope", 60.0, t8_envelope},
      {"8 powers of extremal weight", 30.0, t7_powers},
      {"9 Bellman induction replay", 120.0, induction_replay},
      {"10 G(C) asymptotics", 10.0, main_asymptotics},
      {"11 weak-type bound", 60.0, weak_type},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool passed = out.passed && in_time;
    if (!passed) ++failures;
    std::printf("%s  %-32s %7.2fs (budget %.0fs%s)  %s\n", passed ? "PASS" : "FAIL", c.name, seconds, c.budget_seconds,
                in_time ? "" : ", exceeded", out.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
