#include <doctest.h>

#include <cmath>
#include <random>

#include "jnbellman/bellman_candidates.hpp"
#include "jnbellman/errors.hpp"
#include "jnbellman/verification.hpp"

using namespace jnb;

TEST_CASE("boundary conditions on Gamma_1")
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t_dist(-4.0, 4.0);
  const std::vector<CandidateKind> kinds{LowerP{1.0}, LowerP{1.3}, LowerP{2.0}, UpperSquare{}, ExpDelta{1.0}, ExpDelta{1.2}, WeakType{0.5}};
  for (int i = 0; i < 500; ++i) {
    const DomainParams d = solve_xi(sample_C(rng, 1.01, 50.0));
    const double t = t_dist(rng);
    for (const auto& kind : kinds) {
      const CandidateValue v = evaluate(kind, {t, std::exp(t)}, d);
      CHECK_FALSE(v.infinite);
      CHECK(std::abs(v.value - boundary_value(kind, t)) <= 1e-10 * std::max(1.0, std::abs(boundary_value(kind, t))));
    }
  }
  CHECK(boundary_value(LowerP{1.5}, -2.0) == doctest::Approx(std::pow(2.0, 1.5)));
  CHECK(boundary_value(WeakType{0.5}, 0.5) == 1.0);
  CHECK(boundary_value(WeakType{0.5}, 0.49) == 0.0);
}

TEST_CASE("values at (0, C)")
{
  for (double C : {1.2, 2.0, 10.0, 1000.0}) {
    const DomainParams d = solve_xi(C);
    const Point top{0.0, C};
    for (double p : {1.25, 1.5, 2.0})
      CHECK(eval_b_p(top, p, d).value == doctest::Approx(std::pow(d.xi_plus * eps0(p), p)).epsilon(1e-10));
    CHECK(eval_b_1(top, d) == doctest::Approx(k_of_C(d)).epsilon(1e-12));
    CHECK(eval_B2(top, d) == doctest::Approx(d.xi_minus * d.xi_minus).epsilon(1e-12));
    for (double delta : {1.0, 0.5 * (1.0 + 1.0 / d.xi_plus)}) {
      const CandidateValue a = eval_A(top, delta, d);
      REQUIRE_FALSE(a.infinite);
      CHECK(a.value == doctest::Approx(std::exp(-delta * d.xi_plus) / (1.0 - delta * d.xi_plus)).epsilon(1e-10));
    }
    for (double lambda : {-d.xi_minus, -2.0 * d.xi_minus, 1.5 - 3.0 * d.xi_minus}) {
      const double expected = d.xi_plus * std::exp(-d.xi_minus / d.xi_plus) / d.spread() * std::exp(-lambda / d.xi_plus);
      CHECK(eval_D(top, lambda, d) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  CHECK(eval_A({0.0, 2.0}, 1.0, solve_xi(2.0)).value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("b_p with p = 2 matches the closed quadratic form")
{
  std::mt19937_64 rng(9);
  for (int i = 0; i < 10000; ++i) {
    const DomainParams d = solve_xi(sample_C(rng, 1.01, 1000.0));
    const Point x = sample_point(rng, d);
    const double u = solve_u(x, d, Branch::plus);
    const double closed = 2.0 * u * x.x1 - u * u + 2.0 * d.xi_plus * (x.x1 - u);
    CHECK(std::abs(eval_b_p(x, 2.0, d).value - closed) <= 1e-10 * std::max(1.0, std::abs(closed)));
  }
}

TEST_CASE("b_p flags C below the identification threshold")
{
  const DomainParams d = solve_xi(1.1);
  CHECK(lower_p_threshold(1.25) > 1.1);
  CHECK(eval_b_p({0.0, 1.05}, 1.25, d).below_threshold);
  CHECK_FALSE(eval_b_p({0.0, 1.05}, 2.0, d).below_threshold);
}

TEST_CASE("b_1 is continuous across the separating tangents")
{
  for (double C : {1.3, 2.0, 30.0}) {
    const DomainParams d = solve_xi(C);
    for (double s : {0.1, 0.4, 0.9}) {
      for (Branch branch : {Branch::plus, Branch::minus}) {
        const double xi = branch == Branch::plus ? d.xi_plus : d.xi_minus;
        const Point on{s * xi, (1 - s) + s * C * std::exp(xi)};
        const double h = 1e-7;
        const Point left{on.x1, on.x2 * (1 - h)}, right{on.x1, on.x2 * (1 + h)};
        CHECK(eval_b_1(left, d) == doctest::Approx(eval_b_1(on, d)).epsilon(1e-6));
        CHECK(eval_b_1(right, d) == doctest::Approx(eval_b_1(on, d)).epsilon(1e-6));
        const Point side{on.x1 + (branch == Branch::plus ? 1e-7 : -1e-7), on.x2};
        CHECK(eval_b_1(side, d) == doctest::Approx(eval_b_1(on, d)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("B_2 increases along vertical segments")
{
  const DomainParams d = solve_xi(3.0);
  double prev = eval_B2({0.0, 1.0}, d);
  for (int i = 1; i <= 100; ++i) {
    const double v = eval_B2({0.0, 1.0 + 2.0 * i / 100.0}, d);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("A is infinite off Gamma_1 once delta reaches 1/xi+")
{
  const DomainParams d = solve_xi(2.0);
  const double delta = 1.0 / d.xi_plus;
  CHECK(eval_A({0.0, 1.5}, delta, d).infinite);
  CHECK(eval_A({0.0, 1.5}, 2.0 * delta, d).infinite);
  const CandidateValue on = eval_A({0.5, std::exp(0.5)}, delta, d);
  CHECK_FALSE(on.infinite);
  CHECK(on.value == doctest::Approx(std::exp(delta * 0.5)));
  CHECK_THROWS_AS(eval_A({0.0, 1.5}, 0.5, d), DomainError);
}

TEST_CASE("D on Gamma_1, the vertical maximum and the envelope")
{
  const DomainParams d = solve_xi(2.0);
  for (double t : {-1.0, 0.2, 0.69, 0.71, 2.0}) CHECK(eval_D({t, std::exp(t)}, 0.7, d) == (t >= 0.7 ? 1.0 : 0.0));
  for (double lambda : {0.0, 0.5, 1.0, -d.xi_minus}) {
    const Point top{0.0, std::exp(lambda) * (-2.0 * std::exp(d.xi_minus) * lambda + 1.0)};
    CHECK(eval_D(top, lambda, d) == doctest::Approx(1.0 - lambda / d.spread()).epsilon(1e-10));
  }
  CHECK(max_D_over_vertical(-0.5, d).envelope == 1.0);
  CHECK(max_D_over_vertical(0.0, d).envelope == 1.0);
  const double at_case_boundary = d.xi_plus / d.spread();
  CHECK(max_D_over_vertical(-d.xi_minus, d).envelope == doctest::Approx(at_case_boundary).epsilon(1e-13));
  CHECK(max_D_over_vertical(-d.xi_minus * (1 - 1e-9), d).envelope == doctest::Approx(at_case_boundary).epsilon(1e-8));
  for (double lambda = 0.0; lambda < 10.0; lambda += 0.1) {
    const VerticalEnvelope env = max_D_over_vertical(lambda, d);
    const double r = d.xi_minus / d.xi_plus;
    CHECK(env.simplified == doctest::Approx(std::exp(-r) / (1.0 - r) * std::exp(-lambda / d.xi_plus)));
    CHECK(env.envelope <= env.simplified * (1 + 1e-12));
    // The envelope dominates D on a vertical sample.
    for (int i = 0; i <= 40; ++i) CHECK(eval_D({0.0, 1.0 + i / 40.0}, lambda, d) <= env.envelope + 1e-12);
  }
}

TEST_CASE("D just above the left tangent is finite and matches the affine piece")
{
  // For large C the omega2 classification band exceeds 1e-11 relative height.
  for (double C : {50.0, 100.0}) {
    const DomainParams params = solve_xi(C);
    const double lambda = -0.5;
    const double X1 = 0.1 * params.xi_minus;
    const Point on = shift(Point{X1, params.tangent_slope_minus() * X1 + 1.0}, lambda);
    const Point above{on.x1, on.x2 * (1.0 + 1e-11)};
    const Point inside{on.x1, on.x2 * (1.0 + 1e-6)};
    CHECK_NOTHROW(gradient(WeakType{lambda}, above, params));
    CHECK(eval_D(above, lambda, params) == doctest::Approx(eval_D(inside, lambda, params)).epsilon(1e-5));
  }
}

TEST_CASE("candidate metadata")
{
  CHECK(std::string(name_of(LowerP{1.0})) == "b_1");
  CHECK(std::string(name_of(LowerP{1.5})) == "b_p");
  CHECK(std::string(name_of(UpperSquare{})) == "B_2");
  CHECK(concavity_sign(LowerP{1.5}) == -1);
  CHECK(concavity_sign(UpperSquare{}) == 1);
  CHECK(concavity_sign(WeakType{0.0}) == 1);
}
