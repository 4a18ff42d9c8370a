#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "jnbellman/domain_geometry.hpp"
#include "jnbellman/optimizers.hpp"
#include "jnbellman/report.hpp"
#include "jnbellman/verification.hpp"

namespace jnb {

/// Step function on (0, 1): value values[i] on (breaks[i], breaks[i+1]).
/// All averages are finite sums over the steps.
class StepFunction2 {
 public:
  StepFunction2(std::vector<double> breaks, std::vector<double> values);

  const std::vector<double>& breaks() const noexcept { return breaks_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// (<phi>_J, <e^phi>_J).
  Point point(Interval J) const;
  /// <|phi|^p>_J.
  double abs_power_mean(double p, Interval J) const;
  bool constant_on(Interval J) const;
  PiecewiseLogStep to_piecewise() const;
  StepFunction2 scaled(double s) const;

  /// Largest A-infinity ratio over intervals whose ends lie on the union of
  /// the breakpoints and the uniform grid of `grid` cells. A lower bound for
  /// the characteristic.
  double characteristic_estimate(int grid = 256) const;

 private:
  template <class F>
  double integrate(Interval J, F&& f) const;

  std::vector<double> breaks_;
  std::vector<double> values_;
};

struct Split {
  double at;     // split point in (a, b)
  double ratio;  // (at - a) / (b - a)
  double theta;  // min(ratio, 1 - ratio)
};

/// Splits J so that the segment between the points of the two halves stays
/// in Omega_{C1}. Ratios 1/2 +- j/(2n) are tried outward from 1/2, doubling n
/// up to 4096. Throws NumericalError (bracket = J) if none works.
Split find_split(const StepFunction2& phi, Interval J, double C1, const ScanConfig& cfg);

/// Replays the induction behind the lower Bellman bound: recursive splitting
/// to `depth`, the convexity inequality at every node, and finally
/// b_{p,C1}(x^Q) <= <|phi|^p>_Q. Residuals are negative slacks relative to
/// max(1, |values|).
VerificationReport bellman_induct(const StepFunction2& phi, double p, double C1, int depth, const ScanConfig& cfg);

/// Random step function with at most `max_steps` steps, scaled so that its
/// estimated characteristic equals `target_C`.
StepFunction2 random_step_function(std::mt19937_64& rng, int max_steps, double target_C);

/// bellman_induct over `cases` random step functions with C1 = c1_factor times
/// the estimated characteristic, p cycling through {1, 1.25, 1.5, 1.75, 2}.
VerificationReport check_induction_family(int cases, int max_steps, int depth, double c1_factor,
                                          const ScanConfig& cfg);

}  // namespace jnb
