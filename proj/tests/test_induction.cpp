#include <doctest.h>

#include <cmath>
#include <random>

#include "jnbellman/bellman_candidates.hpp"
#include "jnbellman/errors.hpp"
#include "jnbellman/induction.hpp"

using namespace jnb;

TEST_CASE("step function averages are exact sums")
{
  const StepFunction2 phi({0.0, 0.25, 1.0}, {2.0, -1.0});
  const Point x = phi.point({0.0, 1.0});
  CHECK(x.x1 == doctest::Approx(0.25 * 2.0 - 0.75));
  CHECK(x.x2 == doctest::Approx(0.25 * std::exp(2.0) + 0.75 * std::exp(-1.0)));
  CHECK(phi.abs_power_mean(1.5, {0.0, 0.5}) == doctest::Approx(0.5 * std::pow(2.0, 1.5) + 0.5));
  CHECK(phi.constant_on({0.3, 0.9}));
  CHECK_FALSE(phi.constant_on({0.2, 0.9}));
  CHECK(phi.to_piecewise()(0.1) == 2.0);
  // Two steps: the largest ratio sits on the full interval or a straddling one.
  const double full = x.x2 * std::exp(-x.x1);
  CHECK(phi.characteristic_estimate() >= full);
}

TEST_CASE("find_split")
{
  ScanConfig cfg;
  const StepFunction2 flat({0.0, 1.0}, {0.4});
  const Split mid = find_split(flat, {0.0, 1.0}, 1.5, cfg);
  CHECK(mid.ratio == 0.5);
  CHECK(mid.at == 0.5);

  const DomainParams d = solve_xi(2.0);
  // Levels 0 and xi+ - xi- with the jump at 0.3: the halves at the jump sit on Gamma_1.
  const StepFunction2 two({0.0, 0.3, 1.0}, {d.spread(), 0.0});
  const double C = two.characteristic_estimate();
  const Split s = find_split(two, {0.0, 1.0}, 1.05 * C, cfg);
  CHECK(s.theta > 0.0);
  const Point left = two.point({0.0, s.at}), right = two.point({s.at, 1.0});
  CHECK(segment_in_domain(left, right, 1.05 * C));

  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const StepFunction2 phi = random_step_function(rng, 8, 3.0);
    CHECK(phi.characteristic_estimate() == doctest::Approx(3.0).epsilon(1e-6));
    CHECK_NOTHROW(find_split(phi, {0.0, 1.0}, 1.1 * 3.0, cfg));
  }
}

TEST_CASE("bellman_induct: constant and discretized phi+")
{
  ScanConfig cfg;
  const StepFunction2 flat({0.0, 1.0}, {-0.6});
  const VerificationReport r = bellman_induct(flat, 1.5, 1.2, 6, cfg);
  CHECK(r.passed);
  CHECK(r.worst_residual <= 1e-12);

  const DomainParams d = solve_xi(2.0);
  const PiecewiseLogStep plus = phi_plus({0.0, 2.0}, d);
  double prev_gap = INFINITY;
  for (int steps : {16, 64, 256}) {
    std::vector<double> breaks{0.0}, values;
    for (int k = 1; k <= steps; ++k) {
      const double a = static_cast<double>(k - 1) / steps, b = static_cast<double>(k) / steps;
      breaks.push_back(b);
      // Exact log-mean of the ramp on (a, b], so e^phi averages stay close.
      values.push_back(averages(plus, Square{}, {a, b}).mean);
    }
    const StepFunction2 phi(breaks, values);
    const double C1 = 1.05 * std::max(2.0, phi.characteristic_estimate());
    const VerificationReport rep = bellman_induct(phi, 2.0, C1, 8, cfg);
    CHECK(rep.passed);
    const Point top = phi.point({0.0, 1.0});
    const double gap = phi.abs_power_mean(2.0, {0.0, 1.0}) - eval_b_p(top, 2.0, solve_xi(C1)).value;
    CHECK(gap >= -1e-12);
    CHECK(gap < prev_gap + 1e-12);
    prev_gap = gap;
  }
}

TEST_CASE("induction family")
{
  ScanConfig cfg;
  const VerificationReport r = check_induction_family(10, 16, 8, 1.05, cfg);
  CHECK(r.passed);
  CHECK(r.checks > 10);
}
