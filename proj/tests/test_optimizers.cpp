#include <doctest.h>

#include <cmath>
#include <random>

#include "jnbellman/bellman_candidates.hpp"
#include "jnbellman/errors.hpp"
#include "jnbellman/optimizers.hpp"
#include "jnbellman/verification.hpp"

using namespace jnb;

namespace {

double total_width(const PiecewiseLogStep& phi)
{
  double w = 0.0;
  for (const Piece& p : phi.pieces()) w += p.hi - p.lo;
  return w;
}

}  // namespace

TEST_CASE("PiecewiseLogStep validation and evaluation")
{
  CHECK_THROWS_AS(PiecewiseLogStep({{0.0, 0.5, Constant{1.0}}}), DomainError);
  CHECK_THROWS_AS(PiecewiseLogStep({{0.0, 0.5, Constant{1.0}}, {0.6, 1.0, Constant{0.0}}}), DomainError);
  const PiecewiseLogStep step({{0.0, 0.5, Constant{1.0}}, {0.5, 1.0, Constant{-1.0}}});
  // Pieces are (lo, hi]: the breakpoint belongs to the left piece.
  CHECK(step(0.5) == 1.0);
  CHECK(step(0.5000001) == -1.0);
  CHECK(step.breakpoints() == std::vector<double>{0.5});
  CHECK(step.shifted(2.0)(0.75) == 1.0);
  CHECK(step.scaled(3.0)(0.25) == 3.0);
  const PiecewiseLogStep ramp({{0.0, 1.0, LogRamp{0.5, 2.0, 1.0}}});
  CHECK(ramp(std::exp(-1.0)) == doctest::Approx(2.5));
}

TEST_CASE("optimizers on Gamma_1 are constants")
{
  const DomainParams d = solve_xi(3.0);
  const Point x{0.4, std::exp(0.4)};
  for (const PiecewiseLogStep& phi : {phi_plus(x, d), phi_minus(x, d), psi(x, d), eta(x, 0.4 - 0.3, d)}) {
    REQUIRE(phi.pieces().size() == 1);
    CHECK(std::get<Constant>(phi.pieces()[0].kind).c == doctest::Approx(0.4).epsilon(1e-12));
  }
}

TEST_CASE("phi+ and phi- at (0, C) are single log ramps")
{
  const DomainParams d = solve_xi(2.0);
  const PiecewiseLogStep plus = phi_plus({0.0, 2.0}, d);
  REQUIRE(plus.pieces().size() == 1);
  const auto& r = std::get<LogRamp>(plus.pieces()[0].kind);
  CHECK(r.u == doctest::Approx(-d.xi_plus).epsilon(1e-12));
  CHECK(r.xi == d.xi_plus);
  CHECK(r.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(plus(0.25) == doctest::Approx(d.xi_plus * (std::log(4.0) - 1.0)).epsilon(1e-12));
  const PiecewiseLogStep minus = phi_minus({0.0, 2.0}, d);
  REQUIRE(minus.pieces().size() == 1);
  CHECK(std::get<LogRamp>(minus.pieces()[0].kind).u == doctest::Approx(-d.xi_minus).epsilon(1e-12));
  CHECK(std::get<LogRamp>(minus.pieces()[0].kind).alpha == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constraint reproduction, optimality and Jensen on random points")
{
  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    const SampledOptimizer s = sample_optimizer(rng, 1.01, 1000.0);
    CHECK(total_width(s.phi) == doctest::Approx(1.0).epsilon(1e-13));
    const AverageTriple t = averages(s.phi, Square{});
    CHECK(std::abs(t.mean - s.x.x1) <= 1e-9 * std::max(1.0, std::abs(s.x.x1)));
    CHECK(std::abs(t.exp_mean - s.x.x2) <= 1e-9 * s.x.x2);
    CHECK(t.exp_mean >= std::exp(t.mean) * (1 - 1e-12));
    if (s.kind == "phi-") CHECK(t.f_mean == doctest::Approx(eval_B2(s.x, s.params)).epsilon(1e-8));
    if (s.kind == "psi") CHECK(averages(s.phi, AbsPower{1.0}).f_mean == doctest::Approx(eval_b_1(s.x, s.params)).epsilon(1e-8).scale(1e-12));
    if (s.kind == "eta")
      CHECK(measure_above(s.phi, s.lambda) == doctest::Approx(eval_D(s.x, s.lambda, s.params)).epsilon(1e-8).scale(1e-12));
  }
}

TEST_CASE("phi+ averages of |.|^p equal b_p")
{
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const double p = std::uniform_real_distribution<double>(1.05, 2.0)(rng);
    const DomainParams d = solve_xi(sample_C(rng, 1.01, 1000.0));
    const Point x = sample_point(rng, d);
    const double expected = eval_b_p(x, p, d).value;
    CHECK(averages(phi_plus(x, d), AbsPower{p}).f_mean == doctest::Approx(expected).epsilon(1e-8).scale(1e-12));
  }
}

TEST_CASE("psi at (0, C) and the exponential identity")
{
  for (double C : {1.5, 2.0, 20.0}) {
    const DomainParams d = solve_xi(C);
    const PiecewiseLogStep s = psi({0.0, C}, d);
    CHECK(s.pieces().size() == 3);
    CHECK(total_width(s) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(averages(s, AbsPower{1.0}).f_mean == doctest::Approx(k_of_C(d)).epsilon(1e-12));
    CHECK(std::exp(d.spread()) == doctest::Approx(d.one_minus_xi_minus / d.one_minus_xi_plus).epsilon(1e-12));
  }
  const PiecewiseLogStep flat = psi({0.0, 1.0}, solve_xi(2.0));
  REQUIRE(flat.pieces().size() == 1);
  CHECK(std::get<Constant>(flat.pieces()[0].kind).c == 0.0);
}

TEST_CASE("eta level sets in Omega_2(0) and Omega_1(0)")
{
  const DomainParams d = solve_xi(2.0);
  const Point in2{-0.5, 0.75};
  REQUIRE(classify_D(in2, 0.0, d).tag == RegionDTag::omega2);
  const double v = solve_v(in2, 0.0, d);
  CHECK(measure_above(eta(in2, 0.0, d), 0.0) == doctest::Approx(1.0 - in2.x1 / v).epsilon(1e-12));

  const Point in1{-2.5, 1.9 * std::exp(-2.5)};
  REQUIRE(classify_D(in1, 0.0, d).tag == RegionDTag::omega1);
  const double u = solve_u(in1, d, Branch::plus);
  const double expected = (in1.x1 - u) / d.spread() * std::exp((u + d.spread()) / d.xi_plus);
  CHECK(measure_above(eta(in1, 0.0, d), 0.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("measure_above")
{
  const PiecewiseLogStep c({{0.0, 1.0, Constant{0.3}}});
  CHECK(measure_above(c, 0.3) == 1.0);
  CHECK(measure_above(c, 0.2, {0.25, 0.75}) == doctest::Approx(0.5));
  CHECK(measure_above(c, 0.31) == 0.0);
  CHECK(measure_above(c, 0.31) + measure_below(c, 0.31) == doctest::Approx(1.0));
  const DomainParams d = solve_xi(2.0);
  const PiecewiseLogStep plus = phi_plus({0.0, 2.0}, d);
  for (double lambda : {0.0, 0.5, 2.0}) {
    // u + xi log(1/t) >= lambda  iff  t <= e^{(u - lambda)/xi}.
    CHECK(measure_above(plus, lambda) == doctest::Approx(std::exp((-d.xi_plus - lambda) / d.xi_plus)).epsilon(1e-13));
  }
}

TEST_CASE("cutoff")
{
  const DomainParams d = solve_xi(2.0);
  const PiecewiseLogStep plus = phi_plus({0.0, 2.0}, d);
  const PiecewiseLogStep same = cutoff(plus, -d.xi_plus, INFINITY);
  for (double t : {1e-9, 0.01, 0.3, 0.99}) CHECK(same(t) == doctest::Approx(plus(t)).epsilon(1e-14));
  const PiecewiseLogStep step({{0.0, 0.5, Constant{1.0}}, {0.5, 1.0, Constant{-1.0}}});
  const PiecewiseLogStep id = cutoff(step, -2.0, 2.0);
  CHECK(id(0.25) == 1.0);
  CHECK(id(0.75) == -1.0);
  const PiecewiseLogStep cut = cutoff(plus, -0.5, 1.0);
  for (double t : {1e-9, 0.01, 0.1, 0.3, 0.99}) CHECK(cut(t) == doctest::Approx(std::min(std::max(plus(t), -0.5), 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(cutoff(plus, 1.0, 1.0), DomainError);
}

TEST_CASE("exp averages diverge for ramps with xi >= 1")
{
  const PiecewiseLogStep steep({{0.0, 1.0, LogRamp{0.0, 1.0, 1.0}}});
  const AverageTriple t = averages(steep, ExpScaled{1.0});
  CHECK(t.exp_infinite);
  CHECK_FALSE(averages(steep, Square{}).f_infinite);
  CHECK(averages(steep, Square{}).mean == doctest::Approx(1.0));
}
