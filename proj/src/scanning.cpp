#include <algorithm>
#include <cmath>
#include <limits>

#include "jnbellman/errors.hpp"
#include "jnbellman/quadrature.hpp"
#include "jnbellman/verification.hpp"

namespace jnb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void push_clipped(std::vector<Interval>& out, double a, double b)
{
  a = std::max(a, 0.0);
  b = std::min(b, 1.0);
  if (b - a > 1e-300) out.push_back({a, b});
}

// int_s^t g(phi) over one piece by quadrature.
// `decay_of(ramp)` is the decay rate in y of g(u + xi y) e^{-y}, used when the
// piece reaches t = 0. A finite `exp_rate` r declares g(v) = e^{r v}; the
// integrand is then formed in log space since e^{r xi y} alone overflows.
template <class G, class Decay>
double piece_quadrature(const Piece& piece, double s, double t, G&& g, Decay&& decay_of, const std::vector<double>& levels,
                        double exp_rate)
{
  const quad::Options opt{1e-300, 1e-13, 4000};
  if (const auto* k = std::get_if<Constant>(&piece.kind)) return g(k->c) * (t - s);
  const LogRamp& r = std::get<LogRamp>(piece.kind);
  if (r.xi == 0.0) return g(r.u) * (t - s);
  // tau = alpha e^{-y}: int_s^t g(phi(tau)) dtau = int_{y_t}^{y_s} g(u + xi y) alpha e^{-y} dy.
  const double y_t = std::log(r.alpha / t);
  const double y_s = s == 0.0 ? kInf : std::log(r.alpha / s);
  auto h = [&](double y) {
    if (std::isfinite(exp_rate)) return r.alpha * std::exp(exp_rate * (r.u + r.xi * y) - y);
    return g(r.u + r.xi * y) * r.alpha * std::exp(-y);
  };
  std::vector<double> cuts{y_t};
  for (double level : levels) {
    const double y = (level - r.u) / r.xi;
    if (y > y_t && y < y_s) cuts.push_back(y);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += quad::integrate(h, cuts[i], cuts[i + 1], opt).value;
  if (std::isfinite(y_s)) return total + quad::integrate(h, cuts.back(), y_s, opt).value;
  const double decay = decay_of(r);
  if (!(decay > 0.0)) return kInf;
  return total + quad::integrate_to_infinity(h, cuts.back(), 1.0 / decay, opt).value;
}

}  // namespace

void ScanConfig::validate() const
{
  if (grid_depth < 1 || grid_depth > 24) throw DomainError("ScanConfig: grid_depth must lie in [1, 24]");
  if (samples < 0) throw DomainError("ScanConfig: samples must be nonnegative");
}

namespace {

// Non-dyadic part of the scan family.
std::vector<Interval> refinement_intervals(const PiecewiseLogStep& phi, const ScanConfig& cfg)
{
  std::vector<Interval> out;
  if (cfg.geometric_refine_at_zero)
    for (int k = 1; k <= 256; ++k) out.push_back({0.0, std::exp2(-k / 4.0)});
  if (cfg.breakpoint_refine) {
    const std::vector<double> cuts = phi.breakpoints();
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const double c = cuts[i];
      push_clipped(out, 0.0, c);
      push_clipped(out, c, 1.0);
      // Radii both absolute and relative to the nearest neighbouring cut or
      // endpoint, so a jump close to 0 or 1 is still seen from both sides.
      const double left = i == 0 ? c : c - cuts[i - 1];
      const double right = i + 1 == cuts.size() ? 1.0 - c : cuts[i + 1] - c;
      const double gap = std::min(left, right);
      for (int k = 1; k <= 2 * cfg.grid_depth; ++k) {
        for (double r : {std::exp2(-k / 2.0), gap * std::exp2(-(k - 1) / 2.0)})
          for (double ratio : {0.25, 0.5, 1.0, 2.0, 4.0}) push_clipped(out, c - r, c + ratio * r);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Interval> scan_family(const PiecewiseLogStep& phi, const ScanConfig& cfg)
{
  cfg.validate();
  std::vector<Interval> out;
  out.reserve((std::size_t{2} << cfg.grid_depth) + 512);
  for (int k = 0; k <= cfg.grid_depth; ++k) {
    const double n = std::ldexp(1.0, k);
    for (long j = 0; j < static_cast<long>(n); ++j) out.push_back({j / n, (j + 1) / n});
  }
  const std::vector<Interval> extra = refinement_intervals(phi, cfg);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

double ainfty_ratio(const PiecewiseLogStep& phi, Interval J, double delta)
{
  const MeanAndExp me = mean_and_exp(phi, J, delta);
  if (std::isinf(me.exp_mean)) return kInf;
  return std::exp(std::log(me.exp_mean) - delta * me.mean);
}

double oscillation(const PiecewiseLogStep& phi, double p, Interval J)
{
  const double m = mean_and_exp(phi, J, 0.0).mean;
  return std::pow(abs_power_mean(phi, p, m, J), 1.0 / p);
}

ScanResult scan_ainfty(const PiecewiseLogStep& phi, const ScanConfig& cfg, double delta)
{
  cfg.validate();
  ScanResult best{-kInf, {0.0, 1.0}};
  auto consider = [&](double mean_int, double exp_int, Interval J) {
    const double len = J.length();
    const double v = std::isinf(exp_int) ? kInf : std::exp(std::log(exp_int / len) - delta * mean_int / len);
    if (v > best.value) best = {v, J};
  };
  // Dyadic intervals: closed form on the finest level, then sums of the two
  // children. All terms of the exponential integral are positive.
  const long n = 1L << cfg.grid_depth;
  std::vector<double> mean_int(n);
  std::vector<double> exp_int(n);
  for (long j = 0; j < n; ++j) {
    const Interval J{static_cast<double>(j) / n, static_cast<double>(j + 1) / n};
    const MeanAndExp me = mean_and_exp(phi, J, delta);
    mean_int[j] = me.mean * J.length();
    exp_int[j] = me.exp_mean * J.length();
  }
  for (long width = n; width >= 1; width /= 2) {
    for (long j = 0; j < width; ++j)
      consider(mean_int[j], exp_int[j], {static_cast<double>(j) / width, static_cast<double>(j + 1) / width});
    for (long j = 0; j < width / 2; ++j) {
      mean_int[j] = mean_int[2 * j] + mean_int[2 * j + 1];
      exp_int[j] = exp_int[2 * j] + exp_int[2 * j + 1];
    }
  }
  for (const Interval& J : refinement_intervals(phi, cfg)) {
    const double v = ainfty_ratio(phi, J, delta);
    if (v > best.value) best = {v, J};
  }
  return best;
}

ScanResult scan_bmo_norm(const PiecewiseLogStep& phi, double p, const ScanConfig& cfg)
{
  if (!(p >= 1.0)) throw DomainError("scan_bmo_norm: p must be >= 1");
  ScanResult best{-kInf, {0.0, 1.0}};
  for (const Interval& J : scan_family(phi, cfg)) {
    const double v = oscillation(phi, p, J);
    if (v > best.value) best = {v, J};
  }
  return best;
}

AverageTriple averages_by_quadrature(const PiecewiseLogStep& phi, const FunctionKind& f, Interval J)
{
  if (!(J.a >= 0.0 && J.b <= 1.0 && J.a < J.b)) throw DomainError("interval must satisfy 0 <= a < b <= 1");
  auto sum = [&](auto&& g, auto&& decay_of, std::vector<double> levels, double exp_rate = kNaN) {
    double total = 0.0;
    for (const Piece& piece : phi.pieces()) {
      const double s = std::max(piece.lo, J.a);
      const double t = std::min(piece.hi, J.b);
      if (t > s) total += piece_quadrature(piece, s, t, g, decay_of, levels, exp_rate);
    }
    return total / J.length();
  };
  auto unit = [](const LogRamp&) { return 1.0; };
  auto exp_decay = [](double delta) { return [delta](const LogRamp& r) { return std::min(1.0, 1.0 - delta * r.xi); }; };

  AverageTriple out;
  out.method = AverageMethod::quadrature;
  out.mean = sum([](double v) { return v; }, unit, {});
  out.exp_mean = sum([](double v) { return std::exp(v); }, exp_decay(1.0), {}, 1.0);
  out.exp_infinite = std::isinf(out.exp_mean);
  out.f_mean = std::visit(
      Overloaded{
          [&](const AbsPower& k) { return sum([p = k.p](double v) { return std::pow(std::fabs(v), p); }, unit, {0.0}); },
          [&](const Square&) { return sum([](double v) { return v * v; }, unit, {}); },
          [&](const ExpScaled& k) {
            return sum([delta = k.delta](double v) { return std::exp(delta * v); }, exp_decay(k.delta), {}, k.delta);
          },
          [&](const IndicatorAtLeast& k) {
            return sum([level = k.level](double v) { return v >= level ? 1.0 : 0.0; }, unit, {k.level});
          },
      },
      f);
  out.f_infinite = std::isinf(out.f_mean);
  return out;
}

}  // namespace jnb
