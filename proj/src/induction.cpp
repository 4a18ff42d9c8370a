#include "jnbellman/induction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
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

}  // namespace

StepFunction2::StepFunction2(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values))
{
  if (values_.empty() || breaks_.size() != values_.size() + 1)
    throw DomainError("StepFunction2: need n values and n + 1 breakpoints");
  if (breaks_.front() != 0.0 || breaks_.back() != 1.0)
    throw DomainError("StepFunction2: breakpoints must start at 0 and end at 1");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i] > breaks_[i - 1])) throw DomainError("StepFunction2: breakpoints must increase");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("StepFunction2: values must be finite");
}

template <class F>
double StepFunction2::integrate(Interval J, F&& f) const
{
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double overlap = std::min(breaks_[i + 1], J.b) - std::max(breaks_[i], J.a);
    if (overlap > 0.0) total += overlap * f(values_[i]);
  }
  return total;
}

Point StepFunction2::point(Interval J) const
{
  const double len = J.length();
  return {integrate(J, [](double v) { return v; }) / len, integrate(J, [](double v) { return std::exp(v); }) / len};
}

double StepFunction2::abs_power_mean(double p, Interval J) const
{
  return integrate(J, [p](double v) { return std::pow(std::fabs(v), p); }) / J.length();
}

bool StepFunction2::constant_on(Interval J) const
{
  bool seen = false;
  double value = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::min(breaks_[i + 1], J.b) - std::max(breaks_[i], J.a) <= 0.0) continue;
    if (seen && values_[i] != value) return false;
    seen = true;
    value = values_[i];
  }
  return true;
}

PiecewiseLogStep StepFunction2::to_piecewise() const
{
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < values_.size(); ++i) pieces.push_back({breaks_[i], breaks_[i + 1], Constant{values_[i]}});
  return PiecewiseLogStep(std::move(pieces));
}

StepFunction2 StepFunction2::scaled(double s) const
{
  std::vector<double> v = values_;
  for (double& x : v) x *= s;
  return StepFunction2(breaks_, std::move(v));
}

double StepFunction2::characteristic_estimate(int grid) const
{
  std::vector<double> nodes = breaks_;
  for (int k = 1; k < grid; ++k) nodes.push_back(static_cast<double>(k) / grid);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  // phi is constant between consecutive nodes.
  std::vector<double> level(nodes.size() - 1);
  std::size_t step = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    while (breaks_[step + 1] <= nodes[i]) ++step;
    level[i] = values_[step];
  }
  double best = 1.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double s1 = 0.0;
    double se = 0.0;
    for (std::size_t j = i; j + 1 < nodes.size(); ++j) {
      const double dt = nodes[j + 1] - nodes[j];
      s1 += level[j] * dt;
      se += std::exp(level[j]) * dt;
      const double len = nodes[j + 1] - nodes[i];
      best = std::max(best, std::exp(std::log(se / len) - s1 / len));
    }
  }
  return best;
}

Split find_split(const StepFunction2& phi, Interval J, double C1, const ScanConfig&)
{
  const DomainParams outer{C1, 0.0, 0.0, 1.0, 1.0};
  auto works = [&](double ratio) {
    const double at = J.a + ratio * J.length();
    if (!(at > J.a && at < J.b)) return false;
    const Point left = phi.point({J.a, at});
    const Point right = phi.point({at, J.b});
    return in_domain(left, outer) && in_domain(right, outer) && segment_in_domain(left, right, C1);
  };
  for (int n = 16; n <= 4096; n *= 2) {
    for (int j = 0; j < n; ++j) {
      if (n > 16 && j % 2 == 0) continue;  // tried at the previous level
      for (int sign : {1, -1}) {
        if (j == 0 && sign < 0) continue;
        const double ratio = 0.5 + sign * j / (2.0 * n);
        if (works(ratio)) return {J.a + ratio * J.length(), ratio, std::min(ratio, 1.0 - ratio)};
      }
    }
  }
  throw NumericalError("find_split: no admissible split of (" + std::to_string(J.a) + ", " + std::to_string(J.b) +
                           ") for C1 = " + std::to_string(C1),
                       J.a, J.b);
}

VerificationReport bellman_induct(const StepFunction2& phi, double p, double C1, int depth, const ScanConfig& cfg)
{
  if (!(p >= 1.0 && p <= 2.0)) throw DomainError("bellman_induct: p must lie in [1, 2]");
  if (depth < 0 || depth > 12) throw DomainError("bellman_induct: depth must lie in [0, 12]");
  ReportBuilder report("induction", 1e-10);
  const DomainParams params = solve_xi(C1);
  if (p > 1.0 && C1 < lower_p_threshold(p)) report.add_flag("C1 below e^{p-2}/(p-1)");
  auto G = [&](Point x) { return p == 1.0 ? eval_b_1(x, params) : eval_b_p(x, p, params).value; };
  double min_theta = 0.5;
  double widest_open_leaf = 0.0;

  std::function<void(Interval, int)> node = [&](Interval J, int level) {
    const Point x = phi.point(J);
    const double gx = G(x);
    if (level == depth || phi.constant_on(J)) {
      if (!phi.constant_on(J)) widest_open_leaf = std::max(widest_open_leaf, J.length());
      const double slack = phi.abs_power_mean(p, J) - gx;
      report.record(-slack / std::max(1.0, std::fabs(gx)), [&] {
        return json{{"node", "leaf"}, {"interval", {J.a, J.b}}, {"x", to_json(x)}, {"slack", slack}};
      });
      return;
    }
    const Split split = find_split(phi, J, C1, cfg);
    min_theta = std::min(min_theta, split.theta);
    const Interval left{J.a, split.at};
    const Interval right{split.at, J.b};
    const double gl = G(phi.point(left));
    const double gr = G(phi.point(right));
    const double slack = split.ratio * gl + (1.0 - split.ratio) * gr - gx;
    const double scale = std::max({1.0, std::fabs(gl), std::fabs(gr), std::fabs(gx)});
    report.record(-slack / scale, [&] {
      return json{{"node", "split"}, {"interval", {J.a, J.b}}, {"at", split.at}, {"x", to_json(x)}, {"slack", slack}};
    });
    node(left, level + 1);
    node(right, level + 1);
  };

  node({0.0, 1.0}, 0);
  const Point root = phi.point({0.0, 1.0});
  const double total = phi.abs_power_mean(p, {0.0, 1.0}) - G(root);
  report.record(-total / std::max(1.0, std::fabs(G(root))), [&] {
    return json{{"node", "root"}, {"x", to_json(root)}, {"slack", total}};
  });
  report.add_flag("min theta " + format_number(min_theta, 6));
  report.add_flag("widest non-constant leaf " + format_number(widest_open_leaf, 6));
  return report.finish();
}

StepFunction2 random_step_function(std::mt19937_64& rng, int max_steps, double target_C)
{
  if (max_steps < 2 || !(target_C > 1.0)) throw DomainError("random_step_function: need >= 2 steps and C > 1");
  const int n = std::uniform_int_distribution<int>(2, max_steps)(rng);
  std::vector<double> breaks{0.0, 1.0};
  while (static_cast<int>(breaks.size()) < n + 1) {
    const double b = uniform(rng, 0.0, 1.0);
    if (std::none_of(breaks.begin(), breaks.end(), [b](double c) { return std::fabs(b - c) < 1e-4; }))
      breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(n);
  for (double& v : values) v = normal(rng);
  const StepFunction2 base(breaks, values);
  // The characteristic of e^{s phi} increases with s > 0.
  double lo = 0.0;
  double hi = 1.0;
  while (base.scaled(hi).characteristic_estimate() < target_C) hi *= 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (base.scaled(mid).characteristic_estimate() < target_C ? lo : hi) = mid;
  }
  return base.scaled(0.5 * (lo + hi));
}

VerificationReport check_induction_family(int cases, int max_steps, int depth, double c1_factor, const ScanConfig& cfg)
{
  ReportBuilder report("induction_family", 1e-10);
  std::mt19937_64 rng(cfg.seed);
  const double ps[] = {1.0, 1.25, 1.5, 1.75, 2.0};
  for (int i = 0; i < cases; ++i) {
    const double p = ps[i % 5];
    const double lo = std::max(1.5, p > 1.0 ? lower_p_threshold(p) : 1.0);
    const double target = std::exp(uniform(rng, std::log(lo), std::log(10.0)));
    const StepFunction2 phi = random_step_function(rng, max_steps, target);
    const double C1 = c1_factor * phi.characteristic_estimate();
    try {
      report.merge(bellman_induct(phi, p, C1, depth, cfg), false);
    } catch (const NumericalError& e) {
      report.fail(std::string("case ") + std::to_string(i) + ": " + e.what());
    }
  }
  report.add_flag(std::to_string(cases) + " step functions, depth " + std::to_string(depth) + ", C1 = " +
                  format_number(c1_factor, 6) + " x estimated characteristic");
  return report.finish();
}

}  // namespace jnb
