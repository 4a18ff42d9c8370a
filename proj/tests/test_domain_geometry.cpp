#include <doctest.h>

#include <cmath>
#include <random>

#include "jnbellman/domain_geometry.hpp"
#include "jnbellman/errors.hpp"
#include "jnbellman/verification.hpp"

using namespace jnb;

namespace {

// Tangent relation x2 = e^u ((x1 - u)/(1 - xi) + 1), written relative to x2.
double tangent_residual(Point x, double u, double one_minus_xi)
{
  return std::exp(u) * ((x.x1 - u) / one_minus_xi + 1.0) / x.x2 - 1.0;
}

}  // namespace

TEST_CASE("in_domain")
{
  const DomainParams d = solve_xi(2.0);
  for (double t : {-30.0, -1.0, 0.0, 2.5, 30.0}) CHECK(in_domain({t, std::exp(t)}, d));
  CHECK(in_domain({0.0, 2.0}, d));
  CHECK_FALSE(in_domain({0.0, 3.0}, d));
  CHECK_FALSE(in_domain({0.0, 0.99}, d));
}

TEST_CASE("solve_u: boundary and tangency points")
{
  const DomainParams d = solve_xi(2.0);
  for (double t : {-2.0, 0.0, 1.5}) {
    CHECK(solve_u({t, std::exp(t)}, d, Branch::plus) == doctest::Approx(t).epsilon(1e-12));
    CHECK(solve_u({t, std::exp(t)}, d, Branch::minus) == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK(solve_u({0.0, 2.0}, d, Branch::plus) == doctest::Approx(-d.xi_plus).epsilon(1e-12));
  CHECK(solve_u({0.0, 2.0}, d, Branch::minus) == doctest::Approx(-d.xi_minus).epsilon(1e-12));
  CHECK_THROWS_AS(solve_u({0.0, 2.5}, d, Branch::plus), DomainError);
}

TEST_CASE("solve_u: bracket, residual and translation covariance on random points")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> shift_dist(-5.0, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const DomainParams d = solve_xi(sample_C(rng, 1.001, 1000.0));
    const Point x = sample_point(rng, d);
    const double up = solve_u(x, d, Branch::plus);
    const double um = solve_u(x, d, Branch::minus);
    const double slack = 1e-12 * (1.0 + std::abs(x.x1) + std::abs(d.xi_minus));
    REQUIRE(x.x1 - d.xi_plus - slack <= up);
    REQUIRE(up <= x.x1 + slack);
    REQUIRE(x.x1 - slack <= um);
    REQUIRE(um <= x.x1 - d.xi_minus + slack);
    CHECK(std::abs(tangent_residual(x, up, d.one_minus_xi_plus)) <= 1e-10);
    CHECK(std::abs(tangent_residual(x, um, d.one_minus_xi_minus)) <= 1e-10);
    const double c = shift_dist(rng);
    const Point y = shift(x, c);
    CHECK(solve_u(y, d, Branch::plus) == doctest::Approx(up + c).epsilon(1e-9).scale(1.0));
    CHECK(solve_u(y, d, Branch::minus) == doctest::Approx(um + c).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("solve_v")
{
  const DomainParams d = solve_xi(2.0);
  // On Gamma_1 the secant from (lambda, e^lambda) meets Gamma_1 again at x itself.
  CHECK(solve_v({-0.7, std::exp(-0.7)}, 0.0, d) == doctest::Approx(-0.7).epsilon(1e-10));
  // The Omega_2 / Omega_1 boundary: the chord from (lambda + xi- - xi+) to lambda.
  const double lambda = 0.4;
  const double v0 = lambda + d.xi_minus - d.xi_plus;
  const double s = 0.3;
  const Point on_chord{(1 - s) * v0 + s * lambda, (1 - s) * std::exp(v0) + s * std::exp(lambda)};
  CHECK(solve_v(on_chord, lambda, d) == doctest::Approx(v0).epsilon(1e-10));
  // Interior point with lambda = 0: (v, e^v), x and (0, 1) are collinear,
  // i.e. (e^v - 1) / v = (x2 - 1) / x1.
  const Point x{-0.5, 0.75};
  REQUIRE(classify_D(x, 0.0, d).tag == RegionDTag::omega2);
  const double v = solve_v(x, 0.0, d);
  CHECK(std::expm1(v) / v == doctest::Approx((x.x2 - 1.0) / x.x1).epsilon(1e-12));
  CHECK(v < x.x1);
}

TEST_CASE("classify_b1")
{
  const DomainParams d = solve_xi(2.0);
  CHECK(classify_b1({d.xi_plus, 2.0 * std::exp(d.xi_plus)}, d) == RegionB1::omega_zero);
  CHECK(classify_b1({d.xi_minus, 2.0 * std::exp(d.xi_minus)}, d) == RegionB1::omega_zero);
  CHECK(classify_b1({0.0, 2.0}, d) == RegionB1::omega_zero);
  CHECK(classify_b1({0.0, 1.0}, d) == RegionB1::omega_zero);
  CHECK(classify_b1({d.xi_plus + 0.1, std::exp(d.xi_plus + 0.1)}, d) == RegionB1::omega_plus);
  CHECK(classify_b1({1.0, std::exp(1.0)}, d) == RegionB1::omega_plus);
  CHECK(classify_b1({-1.0, std::exp(-1.0)}, d) == RegionB1::omega_minus);
}

TEST_CASE("classify_D")
{
  const DomainParams d = solve_xi(2.0);
  for (double lambda : {-1.0, 0.0, 0.8}) CHECK(classify_D({lambda, std::exp(lambda)}, lambda, d).tag == RegionDTag::omega4);
  CHECK(classify_D({0.0, 2.0}, d.xi_minus - 0.1, d).tag == RegionDTag::omega4);
  CHECK(classify_D({0.0, 2.0}, -d.xi_minus, d).tag == RegionDTag::omega1);
  CHECK(classify_D({0.0, 2.0}, 2.0 * -d.xi_minus, d).tag == RegionDTag::omega1);
  for (double t : {0.0, 0.5, 3.0}) CHECK(classify_D({0.3 + d.xi_plus + t, std::exp(0.3 + d.xi_plus + t)}, 0.3, d).tag == RegionDTag::omega4);
}

TEST_CASE("classify_D tiles Omega_C and is stable under tolerance changes")
{
  std::mt19937_64 rng(11);
  int disagreements = 0;
  const int n = 5000;
  for (int i = 0; i < n; ++i) {
    const DomainParams d = solve_xi(sample_C(rng, 1.01, 100.0));
    const Point x = sample_point(rng, d);
    const double lambda = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const RegionD tight = classify_D(x, lambda, d, 1e-14);
    const RegionD loose = classify_D(x, lambda, d, 1e-9);
    CHECK(static_cast<int>(tight.tag) >= 0);
    CHECK(static_cast<int>(tight.tag) <= 3);
    if (tight.tag != loose.tag) ++disagreements;
  }
  CHECK(disagreements <= n / 500);
}

TEST_CASE("segment_in_domain: examples")
{
  const DomainParams d = solve_xi(2.0);
  CHECK(segment_in_domain({0.0, 1.5}, {0.0, 1.5}, 2.0));
  CHECK(segment_in_domain({0.0, 1.0}, {d.xi_plus, 2.0 * std::exp(d.xi_plus)}, 2.0));
  CHECK(segment_in_domain({0.0, 1.0}, {d.xi_minus, 2.0 * std::exp(d.xi_minus)}, 2.0));
  // Chord of Gamma_1 over [-1, 1]: its midpoint height is cosh(1) > 1.5 times e^0.
  CHECK_FALSE(segment_in_domain({-1.0, std::exp(-1.0)}, {1.0, std::exp(1.0)}, 1.5));
  CHECK(segment_in_domain({-1.0, std::exp(-1.0)}, {1.0, std::exp(1.0)}, 1.7));
}

TEST_CASE("segment_in_domain agrees with dense sampling")
{
  std::mt19937_64 rng(3);
  int agree = 0, total = 0;
  for (int i = 0; i < 1000; ++i) {
    const double C = sample_C(rng, 1.05, 20.0);
    const DomainParams d = solve_xi(C);
    const Point a = sample_point(rng, d, -2.0, 2.0);
    const Point b = sample_point(rng, d, -2.0, 2.0);
    double worst = -INFINITY;
    for (int k = 0; k <= 1000; ++k) {
      const double s = k / 1000.0;
      const Point y{(1 - s) * a.x1 + s * b.x1, (1 - s) * a.x2 + s * b.x2};
      worst = std::max(worst, log_height(y) - std::log(C));
    }
    // Skip segments whose sampled maximum sits within sampling error of Gamma_C.
    if (std::abs(worst) < 1e-5) continue;
    ++total;
    if (segment_in_domain(a, b, C) == (worst <= 0.0)) ++agree;
  }
  CHECK(total > 900);
  CHECK(agree == total);
}
