#pragma once

#include <variant>
#include <vector>

#include "jnbellman/domain_geometry.hpp"
#include "jnbellman/scalar_core.hpp"

namespace jnb {

struct Constant {
  double c;
};

/// t -> u + xi log(alpha / t). Decreasing for xi > 0, increasing for xi < 0.
struct LogRamp {
  double u;
  double xi;
  double alpha;
};

struct Piece {
  double lo;
  double hi;
  std::variant<Constant, LogRamp> kind;

  double operator()(double t) const;
};

/// Function on (0, 1) given by consecutive pieces covering (0, 1).
class PiecewiseLogStep {
 public:
  /// Drops empty pieces; throws DomainError unless the rest are ordered,
  /// contiguous within 1e-14 and cover (0, 1).
  /// Pieces are read as (lo, hi].
  explicit PiecewiseLogStep(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  double operator()(double t) const;
  /// phi + c
  PiecewiseLogStep shifted(double c) const;
  /// s phi
  PiecewiseLogStep scaled(double s) const;
  /// Interior endpoints of the pieces.
  std::vector<double> breakpoints() const;

 private:
  std::vector<Piece> pieces_;
};

struct AbsPower {
  double p;
};
struct Square {};
struct ExpScaled {
  double delta;
};
struct IndicatorAtLeast {
  double level;
};
using FunctionKind = std::variant<AbsPower, Square, ExpScaled, IndicatorAtLeast>;

enum class AverageMethod { closed_form, quadrature };

/// (<phi>, <e^phi>, <f(phi)>) over an interval. The infinite flags are set
/// when the corresponding integral diverges.
struct AverageTriple {
  double mean = 0.0;
  double exp_mean = 0.0;
  double f_mean = 0.0;
  AverageMethod method = AverageMethod::closed_form;
  bool exp_infinite = false;
  bool f_infinite = false;
};

struct Interval {
  double a = 0.0;
  double b = 1.0;
  double length() const noexcept { return b - a; }
};

/// Value of f at a real number.
double apply(const FunctionKind& f, double s);

/// Extremal function for b_p, A_delta: log ramp along the xi+ tangent.
PiecewiseLogStep phi_plus(Point x, const DomainParams& params);
/// Extremal function for B_2: log ramp along the xi- tangent.
PiecewiseLogStep phi_minus(Point x, const DomainParams& params);
/// Extremal step function for b_1.
PiecewiseLogStep psi(Point x, const DomainParams& params);
/// Same, with the region forced rather than classified.
PiecewiseLogStep psi_in_region(Point x, RegionB1 region, const DomainParams& params);
/// Extremal function for D_lambda.
PiecewiseLogStep eta(Point x, double lambda, const DomainParams& params);
/// t -> scale log(1/t).
PiecewiseLogStep log_reciprocal(double scale = 1.0);

/// phi clamped to [c, d] (c < d, either may be infinite). Log ramps are
/// split at the crossing points so the result is again piecewise log-step.
PiecewiseLogStep cutoff(const PiecewiseLogStep& phi, double c, double d);

/// Closed-form averages over `J` (default (0, 1)).
AverageTriple averages(const PiecewiseLogStep& phi, const FunctionKind& f, Interval J = {});

/// <phi>_J and <e^{delta phi}>_J only; the second is +inf when it diverges.
struct MeanAndExp {
  double mean;
  double exp_mean;
};
MeanAndExp mean_and_exp(const PiecewiseLogStep& phi, Interval J = {}, double delta = 1.0);

/// <|phi - c|^p>_J.
double abs_power_mean(const PiecewiseLogStep& phi, double p, double c, Interval J = {});

/// |{t in J : phi(t) >= level}| and |{t in J : phi(t) <= level}|.
double measure_above(const PiecewiseLogStep& phi, double level, Interval J = {});
double measure_below(const PiecewiseLogStep& phi, double level, Interval J = {});

}  // namespace jnb
