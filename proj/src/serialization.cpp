#include "jnbellman/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "jnbellman/errors.hpp"

namespace jnb {

namespace {

// JSON has no infinities; they are written as strings.
nlohmann::ordered_json number(double v)
{
  if (std::isfinite(v)) return v;
  return format_number(v, 17);
}

double read_number(const nlohmann::ordered_json& j)
{
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  throw DomainError("expected a number in piecewise JSON");
}

}  // namespace

std::string format_number(double v, int digits)
{
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

nlohmann::ordered_json to_json(const PiecewiseLogStep& phi)
{
  nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
  for (const Piece& p : phi.pieces()) {
    nlohmann::ordered_json j;
    j["lo"] = p.lo;
    j["hi"] = p.hi;
    if (const auto* k = std::get_if<Constant>(&p.kind)) {
      j["kind"] = "constant";
      j["c"] = k->c;
    } else {
      const auto& r = std::get<LogRamp>(p.kind);
      j["kind"] = "log_ramp";
      j["u"] = r.u;
      j["xi"] = r.xi;
      j["alpha"] = r.alpha;
    }
    pieces.push_back(std::move(j));
  }
  return {{"pieces", std::move(pieces)}};
}

PiecewiseLogStep piecewise_from_json(const nlohmann::ordered_json& j)
{
  if (!j.contains("pieces") || !j["pieces"].is_array()) throw DomainError("piecewise JSON needs a pieces array");
  std::vector<Piece> pieces;
  for (const auto& e : j["pieces"]) {
    const std::string kind = e.at("kind").get<std::string>();
    Piece p{read_number(e.at("lo")), read_number(e.at("hi")), Constant{0.0}};
    if (kind == "constant")
      p.kind = Constant{read_number(e.at("c"))};
    else if (kind == "log_ramp")
      p.kind = LogRamp{read_number(e.at("u")), read_number(e.at("xi")), read_number(e.at("alpha"))};
    else
      throw DomainError("unknown piece kind: " + kind);
    pieces.push_back(p);
  }
  return PiecewiseLogStep(std::move(pieces));
}

nlohmann::ordered_json to_json(const AverageTriple& t)
{
  return {{"mean", number(t.mean)},
          {"exp_mean", number(t.exp_mean)},
          {"f_mean", number(t.f_mean)},
          {"method", t.method == AverageMethod::closed_form ? "closed_form" : "quadrature"}};
}

nlohmann::ordered_json to_json(const VerificationReport& r)
{
  return {{"name", r.name},
          {"passed", r.passed},
          {"worst_residual", number(r.worst_residual)},
          {"tolerance", number(r.tolerance_used)},
          {"checks", r.checks},
          {"witness", r.worst_witness},
          {"flags", r.flags}};
}

nlohmann::ordered_json to_json(Point x) { return nlohmann::ordered_json::array({number(x.x1), number(x.x2)}); }

}  // namespace jnb
