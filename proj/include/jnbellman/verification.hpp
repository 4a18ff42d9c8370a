#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jnbellman/bellman_candidates.hpp"
#include "jnbellman/optimizers.hpp"
#include "jnbellman/report.hpp"
#include "jnbellman/tolerance.hpp"

namespace jnb {

/// Interval family used by the scanners, plus sampling controls.
struct ScanConfig {
  int grid_depth = 10;                 // dyadic intervals of length >= 2^{-grid_depth}
  bool geometric_refine_at_zero = true;  // (0, 2^{-k/4}) down to 2^{-64}
  bool breakpoint_refine = true;         // intervals centred at and ending at breakpoints
  Tolerance tol{};
  int samples = 1000;
  std::uint64_t seed = 1;

  void validate() const;
};

struct ScanResult {
  double value = 0.0;
  Interval witness{};
};

/// Intervals the scanners take the supremum over, in a fixed order.
std::vector<Interval> scan_family(const PiecewiseLogStep& phi, const ScanConfig& cfg);

/// <e^phi>_J e^{-<phi>_J}, +inf when e^phi is not integrable on J.
double ainfty_ratio(const PiecewiseLogStep& phi, Interval J, double delta = 1.0);

/// <|phi - <phi>_J|^p>_J^{1/p}.
double oscillation(const PiecewiseLogStep& phi, double p, Interval J);

/// Largest A-infinity ratio of e^{delta phi} over the scan family.
ScanResult scan_ainfty(const PiecewiseLogStep& phi, const ScanConfig& cfg, double delta = 1.0);

/// Largest p-oscillation over the scan family.
ScanResult scan_bmo_norm(const PiecewiseLogStep& phi, double p, const ScanConfig& cfg);

/// Same averages as `averages`, computed by adaptive quadrature on each
/// piece after the substitution y = log(alpha / t).
AverageTriple averages_by_quadrature(const PiecewiseLogStep& phi, const FunctionKind& f, Interval J = {});

/// Uniform point of Omega_C with x1 in [lo, hi]; a quarter of the samples
/// are pushed to within 1e-3 of Gamma_1 or Gamma_C.
Point sample_point(std::mt19937_64& rng, const DomainParams& params, double lo = -3.0, double hi = 3.0);

/// log-uniform C in [lo, hi].
double sample_C(std::mt19937_64& rng, double lo, double hi);

/// One of phi+, phi-, psi, eta at a random point, chosen uniformly.
struct SampledOptimizer {
  std::string kind;
  DomainParams params;
  Point x;
  double lambda = 0.0;  // used by eta only
  PiecewiseLogStep phi;
};
SampledOptimizer sample_optimizer(std::mt19937_64& rng, double C_lo, double C_hi);

/// Integrand of the candidate on Gamma_1, the function whose average it bounds.
FunctionKind integrand_of(const CandidateKind& kind);

/// G(t, e^t) = f(t) for every candidate at `samples` random t.
VerificationReport check_boundary_values(int samples, std::uint64_t seed, double tol = 1e-10);

/// Closed-form optimizer averages vs (x1, x2, candidate value) and vs the
/// quadrature oracle, for random C in [1.01, 1000] and x in Omega_C.
VerificationReport check_optimizers(int cases, std::uint64_t seed, double tol = 1e-8);

/// Scanned characteristic of every optimizer <= C (1 + tol).
VerificationReport check_admissibility(int cases, const ScanConfig& cfg, double tol = 1e-6);

/// Midpoint convexity (lower candidates) or concavity (upper candidates)
/// along random segments inside Omega_C.
VerificationReport certify_local_convexity(const CandidateKind& family, int segments, std::uint64_t seed,
                                           double tol = 1e-9);

/// Relative residual of G11 G22 - G12^2 from a central-difference Hessian at
/// interior points of each smooth region.
VerificationReport check_monge_ampere(const CandidateKind& family, int points, std::uint64_t seed,
                                      double tol = 1e-4);

/// Closed-form slope-form gradients against central differences.
VerificationReport check_slope_gradients(int points, std::uint64_t seed, double tol = 1e-6);

/// Jumps of D_{x2} across the region boundaries: 0 between omega2 and
/// omega1, <= 0 from omega2 into omega3 and from omega4 into omega3.
VerificationReport check_d_gradient_jumps(int points, std::uint64_t seed, double tol = 1e-6);

/// Cutoff never raises the characteristic, interval by interval.
VerificationReport check_cutoff_monotonicity(int cases, const ScanConfig& cfg, double tol = 1e-12);

/// Scanned characteristic of e^{eps log(1/t)} equals e^{-eps}/(1 - eps).
VerificationReport check_log_family(const std::vector<double>& eps_grid, const ScanConfig& cfg, double tol = 1e-4);

/// Closed-form averages agree with the quadrature oracle; Jensen holds.
VerificationReport check_oracle_equivalence(int cases, std::uint64_t seed, double tol = 1e-8);

}  // namespace jnb
