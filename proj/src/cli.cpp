#include "jnbellman/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "jnbellman/bellman_candidates.hpp"
#include "jnbellman/errors.hpp"
#include "jnbellman/induction.hpp"
#include "jnbellman/optimizers.hpp"
#include "jnbellman/serialization.hpp"
#include "jnbellman/theorems.hpp"
#include "jnbellman/verification.hpp"

namespace jnb::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { text, csv, json };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c, int digits)
{
  if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c), digits);
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
  return "";
}

json cell_json(const Cell& c)
{
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    if (std::isfinite(v)) return v;
    return format_number(v, 17);
  }
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c);
  return nullptr;
}

std::string csv_escape(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_table(std::ostream& out, const Table& t, Format format)
{
  switch (format) {
    case Format::csv: {
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
      out << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i], 17));
        out << '\n';
      }
      return;
    }
    case Format::json: {
      json rows = json::array();
      for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
      }
      out << rows.dump(2) << '\n';
      return;
    }
    case Format::text: {
      std::vector<std::size_t> width(t.columns.size());
      for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
      for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], cell_text(row[i], 6).size());
      auto line = [&](auto&& get) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
          const std::string s = get(i);
          out << (i ? "  " : "") << s << std::string(width[i] - s.size(), ' ');
        }
        out << '\n';
      };
      line([&](std::size_t i) { return t.columns[i]; });
      for (const auto& row : t.rows) line([&](std::size_t i) { return cell_text(row[i], 6); });
      return;
    }
  }
}

// One record as "key: value" lines (text), one-row table (csv) or object (json).
void write_record(std::ostream& out, const std::vector<std::pair<std::string, Cell>>& fields, Format format)
{
  if (format == Format::text) {
    for (const auto& [k, v] : fields) out << k << ": " << cell_text(v, 6) << '\n';
    return;
  }
  if (format == Format::json) {
    json obj = json::object();
    for (const auto& [k, v] : fields) obj[k] = cell_json(v);
    out << obj.dump(2) << '\n';
    return;
  }
  Table t;
  t.rows.emplace_back();
  for (const auto& [k, v] : fields) {
    t.columns.push_back(k);
    t.rows.back().push_back(v);
  }
  write_table(out, t, format);
}

void add_format_option(CLI::App* cmd, Format& format)
{
  cmd->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::text}, {"csv", Format::csv}, {"json", Format::json}}))
      ->default_str("text");
}

// ---- constants ----

struct ConstantsArgs {
  std::vector<double> p;
  std::vector<double> eps;
  Format format = Format::text;
};

int cmd_constants(const ConstantsArgs& a, std::ostream& out)
{
  for (double p : a.p)
    if (!(p >= 1.0 && p <= 2.0)) throw DomainError("constants: p = " + format_number(p, 6) + " outside [1, 2]");
  Table t;
  t.columns = {"p", "eps0"};
  if (!a.eps.empty()) t.columns.insert(t.columns.end(), {"eps", "C", "C_lower", "C_upper", "note"});
  for (double p : a.p) {
    const double e0 = eps0(p);
    if (a.eps.empty()) {
      t.rows.push_back({p, e0});
      continue;
    }
    for (double eps : a.eps) {
      std::vector<Cell> row{p, e0, eps, {}, {}, {}, {}};
      if (p == 1.0) {
        if (eps >= 0.0 && eps < 2.0 / std::exp(1.0)) {
          const Bracket b = jn_bound_p1(eps);
          row[4] = b.lower;
          row[5] = b.upper;
        } else {
          row[6] = std::string("eps outside [0, 2/e)");
        }
      } else {
        try {
          row[3] = jn_sharp_C(eps, p);
        } catch (const RangeError&) {
          row[6] = std::string("eps outside [(2-p) eps0, eps0)");
        }
      }
      t.rows.push_back(std::move(row));
    }
  }
  write_table(out, t, a.format);
  return kOk;
}

// ---- bellman / tabulate ----

struct PointArgs {
  std::string kind;
  double C = 2.0;
  std::vector<double> x;
  std::optional<double> p;
  std::optional<double> delta;
  std::optional<double> lambda;
  Format format = Format::text;
};

CandidateKind candidate_from(const PointArgs& a)
{
  auto need = [&](const std::optional<double>& v, const char* flag) {
    if (!v) throw DomainError("kind " + a.kind + " needs " + flag);
    return *v;
  };
  if (a.kind == "b_p") {
    const double p = need(a.p, "--p");
    if (!(p >= 1.0 && p <= 2.0)) throw DomainError("p must lie in [1, 2]");
    return LowerP{p};
  }
  if (a.kind == "b_1") return LowerP{1.0};
  if (a.kind == "B2") return UpperSquare{};
  if (a.kind == "A") return ExpDelta{need(a.delta, "--delta")};
  if (a.kind == "D") return WeakType{need(a.lambda, "--lambda")};
  throw DomainError("unknown kind " + a.kind + " (b_p, b_1, B2, A, D)");
}

Point point_from(const std::vector<double>& x)
{
  if (x.size() != 2) throw DomainError("--x takes two numbers");
  return {x[0], x[1]};
}

int cmd_bellman(const PointArgs& a, std::ostream& out)
{
  const CandidateKind kind = candidate_from(a);
  const DomainParams params = solve_xi(a.C);
  const Point x = point_from(a.x);
  if (!in_domain(x, params)) throw DomainError("point outside Omega_C");
  const CandidateValue value = evaluate(kind, x, params);
  std::vector<std::pair<std::string, Cell>> fields{
      {"kind", std::string(name_of(kind))}, {"C", a.C}, {"x1", x.x1}, {"x2", x.x2},
      {"value", value.value}, {"infinite", value.infinite}, {"below_threshold", value.below_threshold},
      {"xi_minus", params.xi_minus}, {"xi_plus", params.xi_plus},
      {"u_plus", solve_u(x, params, Branch::plus)}, {"u_minus", solve_u(x, params, Branch::minus)}};
  Cell region = std::string("-");
  Cell v;
  if (const auto* k = std::get_if<LowerP>(&kind); k && k->p == 1.0) region = std::string(to_string(classify_b1(x, params)));
  if (const auto* k = std::get_if<WeakType>(&kind)) {
    const RegionD r = classify_D(x, k->lambda, params);
    region = std::string(to_string(r.tag));
    if (r.tag == RegionDTag::omega2 && x.x1 != k->lambda) v = solve_v(x, k->lambda, params);
  }
  fields.emplace_back("region", region);
  fields.emplace_back("v", v);
  write_record(out, fields, a.format);
  return kOk;
}

struct TabulateArgs {
  PointArgs point;
  std::vector<double> x1_range{-2.0, 2.0};
  int n1 = 21;
  int n2 = 11;
};

int cmd_tabulate(const TabulateArgs& a, std::ostream& out)
{
  const CandidateKind kind = candidate_from(a.point);
  const DomainParams params = solve_xi(a.point.C);
  if (a.x1_range.size() != 2 || !(a.x1_range[0] <= a.x1_range[1])) throw DomainError("--x1 takes lo hi with lo <= hi");
  if (a.n1 < 1 || a.n2 < 2) throw DomainError("--n1 >= 1 and --n2 >= 2 required");
  Table t;
  t.columns = {"x1", "x2", "log_height", "value", "infinite"};
  const double log_C = std::log(params.C);
  for (int i = 0; i < a.n1; ++i) {
    const double x1 = a.n1 == 1 ? a.x1_range[0] : a.x1_range[0] + (a.x1_range[1] - a.x1_range[0]) * i / (a.n1 - 1);
    for (int j = 0; j < a.n2; ++j) {
      const double h = log_C * j / (a.n2 - 1);
      const Point x{x1, std::exp(x1 + h)};
      const CandidateValue v = evaluate(kind, x, params);
      t.rows.push_back({x1, x.x2, h, v.value, v.infinite});
    }
  }
  write_table(out, t, a.point.format);
  return kOk;
}

// ---- optimizer ----

struct OptimizerArgs {
  PointArgs point;
  std::string out_path;
  int depth = 10;
};

int cmd_optimizer(const OptimizerArgs& a, std::ostream& out)
{
  const PointArgs& pa = a.point;
  const DomainParams params = solve_xi(pa.C);
  const Point x = point_from(pa.x);
  if (!in_domain(x, params)) throw DomainError("point outside Omega_C");
  std::optional<PiecewiseLogStep> phi;
  FunctionKind f = Square{};
  if (pa.kind == "phi+") {
    phi = phi_plus(x, params);
    f = AbsPower{pa.p.value_or(2.0)};
  } else if (pa.kind == "phi-") {
    phi = phi_minus(x, params);
  } else if (pa.kind == "psi") {
    phi = psi(x, params);
    f = AbsPower{1.0};
  } else if (pa.kind == "eta") {
    if (!pa.lambda) throw DomainError("kind eta needs --lambda");
    phi = eta(x, *pa.lambda, params);
    f = IndicatorAtLeast{*pa.lambda};
  } else {
    throw DomainError("unknown optimizer kind " + pa.kind + " (phi+, phi-, psi, eta)");
  }
  ScanConfig cfg;
  cfg.grid_depth = a.depth;
  const AverageTriple triple = averages(*phi, f);
  const ScanResult scan = scan_ainfty(*phi, cfg);
  json doc{{"kind", pa.kind}, {"C", pa.C}, {"x", to_json(x)}};
  if (pa.lambda && pa.kind == "eta") doc["lambda"] = *pa.lambda;
  doc["function"] = to_json(*phi);
  doc["averages"] = to_json(triple);
  doc["characteristic"] = {{"value", scan.value}, {"interval", {scan.witness.a, scan.witness.b}}, {"grid_depth", a.depth}};

  if (!a.out_path.empty()) {
    std::ofstream file(a.out_path);
    if (!file) throw IoError("cannot open " + a.out_path + " for writing");
    file << doc.dump(2) << '\n';
    if (!file) throw IoError("write to " + a.out_path + " failed");
  }
  if (pa.format == Format::json) {
    out << doc.dump(2) << '\n';
    return kOk;
  }
  Table t;
  t.columns = {"lo", "hi", "kind", "c", "u", "xi", "alpha"};
  for (const Piece& p : phi->pieces()) {
    if (const auto* k = std::get_if<Constant>(&p.kind))
      t.rows.push_back({p.lo, p.hi, std::string("constant"), k->c, {}, {}, {}});
    else {
      const auto& r = std::get<LogRamp>(p.kind);
      t.rows.push_back({p.lo, p.hi, std::string("log_ramp"), {}, r.u, r.xi, r.alpha});
    }
  }
  if (pa.format == Format::text)
    out << "mean " << format_number(triple.mean, 6) << "  exp_mean " << format_number(triple.exp_mean, 6) << "  f_mean "
        << format_number(triple.f_mean, 6) << "  characteristic " << format_number(scan.value, 6) << '\n';
  write_table(out, t, pa.format);
  return kOk;
}

// ---- verify ----

struct VerifyArgs {
  std::string suite = "all";
  int depth = 10;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  int samples = 200;
  Format format = Format::text;
};

std::vector<double> linspace(double lo, double hi, int n)
{
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return out;
}

std::vector<double> geomspace(double lo, double hi, int n)
{
  std::vector<double> out;
  for (double t : linspace(std::log(lo), std::log(hi), n)) out.push_back(std::exp(t));
  out.back() = hi;
  return out;
}

using SuiteFn = std::function<VerificationReport(const VerifyArgs&, const ScanConfig&)>;

VerificationReport merged(const std::string& name, const std::vector<VerificationReport>& parts)
{
  ReportBuilder report(name, 0.0);
  for (const auto& p : parts) report.merge(p);
  return report.finish();
}

const std::vector<std::pair<std::string, SuiteFn>>& suites()
{
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"admissibility", [](const VerifyArgs& a, const ScanConfig& cfg) { return check_admissibility(a.samples, cfg); }},
      {"boundary", [](const VerifyArgs& a, const ScanConfig&) { return check_boundary_values(a.samples, a.seed); }},
      {"convexity",
       [](const VerifyArgs& a, const ScanConfig&) {
         std::vector<VerificationReport> parts;
         for (const CandidateKind& k : std::vector<CandidateKind>{LowerP{1.0}, LowerP{1.5}, LowerP{2.0}, UpperSquare{},
                                                                   ExpDelta{1.0}, ExpDelta{1.5}, WeakType{0.0}, WeakType{1.0}})
           parts.push_back(certify_local_convexity(k, a.samples, a.seed));
         return merged("convexity", parts);
       }},
      {"cutoff", [](const VerifyArgs& a, const ScanConfig& cfg) { return check_cutoff_monotonicity(std::max(1, a.samples / 10), cfg); }},
      {"gradients", [](const VerifyArgs& a, const ScanConfig&) { return check_slope_gradients(a.samples, a.seed); }},
      {"induction",
       [](const VerifyArgs& a, const ScanConfig& cfg) {
         return check_induction_family(std::max(1, a.samples / 20), 32, std::min(a.depth, 12), 1.05, cfg);
       }},
      {"jumps", [](const VerifyArgs& a, const ScanConfig&) { return check_d_gradient_jumps(a.samples, a.seed); }},
      {"log_family", [](const VerifyArgs&, const ScanConfig& cfg) { return check_log_family(linspace(0.05, 0.95, 19), cfg); }},
      {"main",
       [](const VerifyArgs&, const ScanConfig& cfg) {
         std::vector<VerificationReport> parts;
         for (double p : {1.0, 1.5, 2.0}) parts.push_back(check_theorem_main(p, geomspace(1.01, 1e6, 60), cfg));
         return merged("main", parts);
       }},
      {"monge_ampere",
       [](const VerifyArgs& a, const ScanConfig&) {
         std::vector<VerificationReport> parts;
         for (const CandidateKind& k : std::vector<CandidateKind>{LowerP{1.0}, LowerP{1.5}, LowerP{2.0}, UpperSquare{},
                                                                   ExpDelta{1.0}, WeakType{0.0}})
           parts.push_back(check_monge_ampere(k, std::max(1, a.samples / 4), a.seed));
         return merged("monge_ampere", parts);
       }},
      {"optimizers", [](const VerifyArgs& a, const ScanConfig&) { return check_optimizers(a.samples, a.seed); }},
      {"oracle", [](const VerifyArgs& a, const ScanConfig&) { return check_oracle_equivalence(a.samples, a.seed); }},
      {"t3",
       [](const VerifyArgs& a, const ScanConfig& cfg) {
         ScanConfig small = cfg;
         small.samples = std::max(1, a.samples / 20);
         std::vector<VerificationReport> parts;
         for (double C : {1.5, 2.0, 10.0}) parts.push_back(check_theorem_t3(C, small));
         return merged("t3", parts);
       }},
      {"t7", [](const VerifyArgs&, const ScanConfig& cfg) { return check_theorem_t7(2.0, linspace(1.0, 1.3, 13), cfg); }},
      {"t8",
       [](const VerifyArgs& a, const ScanConfig& cfg) {
         std::vector<VerificationReport> parts;
         ScanConfig sampled = cfg;
         sampled.samples = a.samples;
         for (double C : {1.5, 2.0, 10.0}) {
           const DomainParams params = solve_xi(C);
           parts.push_back(check_theorem_t8(C, linspace(-1.0, 3.0 * params.spread(), 50), sampled));
         }
         return merged("t8", parts);
       }},
      {"weak_jn",
       [](const VerifyArgs& a, const ScanConfig& cfg) {
         ScanConfig coarse = cfg;
         coarse.grid_depth = std::min(cfg.grid_depth, 8);
         std::vector<VerificationReport> parts;
         std::mt19937_64 rng(a.seed);
         std::vector<PiecewiseLogStep> functions{log_reciprocal(1.0)};
         for (int i = 0; i < std::max(1, a.samples / 20); ++i) functions.push_back(sample_optimizer(rng, 1.01, 100.0).phi);
         const std::vector<double> lambdas = linspace(0.0, 10.0, 50);
         for (double p : {1.25, 1.5, 1.75, 2.0})
           for (const auto& phi : functions) {
             if (scan_bmo_norm(phi, p, coarse).value <= 1e-12) continue;
             parts.push_back(check_weak_jn(p, phi, lambdas, coarse));
           }
         return merged("weak_jn", parts);
       }},
  };
  return table;
}

int thread_cap()
{
  int cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("JNBELLMAN_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) cap = std::min(cap, v);
  }
  return cap;
}

VerificationReport with_tolerance(VerificationReport r, std::optional<double> tol)
{
  if (!tol) return r;
  r.tolerance_used = *tol;
  r.passed = r.checks > 0 && !r.aborted && r.worst_residual <= *tol;
  return r;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out)
{
  ScanConfig cfg;
  cfg.grid_depth = a.depth;
  cfg.seed = a.seed;
  cfg.samples = a.samples;
  cfg.validate();
  if (a.samples < 1) throw DomainError("--samples must be >= 1");
  std::vector<std::pair<std::string, SuiteFn>> chosen;
  for (const auto& s : suites())
    if (a.suite == "all" || a.suite == s.first) chosen.push_back(s);
  if (chosen.empty()) throw DomainError("unknown suite " + a.suite);

  std::vector<VerificationReport> reports(chosen.size());
  const std::size_t cap = static_cast<std::size_t>(thread_cap());
  for (std::size_t start = 0; start < chosen.size(); start += cap) {
    std::vector<std::future<VerificationReport>> batch;
    for (std::size_t i = start; i < std::min(chosen.size(), start + cap); ++i)
      batch.push_back(std::async(cap > 1 ? std::launch::async : std::launch::deferred,
                                 [&, i] { return chosen[i].second(a, cfg); }));
    for (std::size_t i = 0; i < batch.size(); ++i) {
      reports[start + i] = with_tolerance(batch[i].get(), a.tol);
      reports[start + i].name = chosen[start + i].first;
    }
  }

  bool all_passed = true;
  for (const auto& r : reports) all_passed = all_passed && r.passed;
  if (a.format == Format::json) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  } else if (a.format == Format::csv) {
    Table t;
    t.columns = {"suite", "passed", "worst_residual", "tolerance", "checks"};
    for (const auto& r : reports)
      t.rows.push_back({r.name, r.passed, r.worst_residual, r.tolerance_used, static_cast<double>(r.checks)});
    write_table(out, t, Format::csv);
  } else {
    for (const auto& r : reports) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << "  worst " << format_number(r.worst_residual, 6) << "  tol "
          << format_number(r.tolerance_used, 6) << "  checks " << r.checks << '\n';
      for (const auto& f : r.flags) out << "    " << f << '\n';
      if (!r.passed) out << "    witness " << r.worst_witness.dump() << '\n';
    }
  }
  return all_passed ? kOk : kVerificationFailed;
}

void add_point_options(CLI::App* cmd, PointArgs& a, bool kind_required = true)
{
  auto* kind = cmd->add_option("--kind", a.kind, "Candidate or optimizer kind");
  if (kind_required) kind->required();
  cmd->add_option("--C", a.C, "A-infinity bound C >= 1")->required();
  cmd->add_option("--p", a.p, "Exponent p");
  cmd->add_option("--delta", a.delta, "Exponent delta");
  cmd->add_option("--lambda", a.lambda, "Level lambda");
  add_format_option(cmd, a.format);
}

}  // namespace

std::vector<std::string> suite_names()
{
  std::vector<std::string> out;
  for (const auto& s : suites()) out.push_back(s.first);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Bellman functions, optimizers and sharp constants for A-infinity weights and BMO^p", "jnbellman"};
  app.require_subcommand(1);

  ConstantsArgs constants;
  auto* c_cmd = app.add_subcommand("constants", "Tabulate eps0(p) and C(eps, p)");
  c_cmd->add_option("--p", constants.p, "Comma-separated p values in [1, 2]")->required()->delimiter(',');
  c_cmd->add_option("--eps", constants.eps, "Comma-separated eps values")->delimiter(',');
  add_format_option(c_cmd, constants.format);

  PointArgs bellman;
  auto* b_cmd = app.add_subcommand("bellman", "Evaluate a Bellman candidate at a point");
  add_point_options(b_cmd, bellman);
  b_cmd->add_option("--x", bellman.x, "x1 x2")->required()->expected(2);

  OptimizerArgs optimizer;
  auto* o_cmd = app.add_subcommand("optimizer", "Build an optimizer and export it as JSON");
  add_point_options(o_cmd, optimizer.point);
  o_cmd->add_option("--x", optimizer.point.x, "x1 x2")->required()->expected(2);
  o_cmd->add_option("-o,--output", optimizer.out_path, "Write the JSON document to this file");
  o_cmd->add_option("--depth", optimizer.depth, "Dyadic depth of the characteristic scan")->check(CLI::Range(1, 24));

  VerifyArgs verify;
  auto* v_cmd = app.add_subcommand("verify", "Run verification suites");
  v_cmd->add_option("--suite", verify.suite, "Suite name or all");
  v_cmd->add_option("--depth", verify.depth, "Dyadic scan depth")->check(CLI::Range(1, 24));
  v_cmd->add_option("--tol", verify.tol, "Override the pass tolerance of every suite");
  v_cmd->add_option("--seed", verify.seed, "Seed for all sampling");
  v_cmd->add_option("--samples", verify.samples, "Sample count scale");
  add_format_option(v_cmd, verify.format);

  TabulateArgs tabulate;
  auto* t_cmd = app.add_subcommand("tabulate", "Evaluate a candidate on a grid of Omega_C");
  add_point_options(t_cmd, tabulate.point);
  t_cmd->add_option("--x1", tabulate.x1_range, "x1 range lo hi")->expected(2);
  t_cmd->add_option("--n1", tabulate.n1, "Number of x1 values");
  t_cmd->add_option("--n2", tabulate.n2, "Number of heights between Gamma_1 and Gamma_C");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*c_cmd) return cmd_constants(constants, out);
    if (*b_cmd) return cmd_bellman(bellman, out);
    if (*o_cmd) return cmd_optimizer(optimizer, out);
    if (*v_cmd) return cmd_verify(verify, out);
    if (*t_cmd) return cmd_tabulate(tabulate, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsageError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace jnb::cli
