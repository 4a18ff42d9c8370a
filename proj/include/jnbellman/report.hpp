#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace jnb {

struct VerificationReport {
  std::string name;
  bool passed = false;
  double worst_residual = 0.0;
  nlohmann::ordered_json worst_witness;  // input that produced worst_residual
  double tolerance_used = 0.0;
  std::vector<std::string> flags;
  long checks = 0;
  bool aborted = false;  // failed regardless of tolerance (NaN, exception, sampling shortfall)
};

/// Accumulates residuals (amount by which a check is violated; <= 0 means
/// satisfied with room to spare) and keeps the worst one with its input.
class ReportBuilder {
 public:
  ReportBuilder(std::string name, double tolerance) : tolerance_(tolerance)
  {
    report_.name = std::move(name);
    report_.tolerance_used = tolerance;
    report_.worst_residual = -INFINITY;
  }

  template <class Witness>
  void record(double residual, Witness&& witness)
  {
    ++report_.checks;
    if (std::isnan(residual)) {
      failed_ = true;
      report_.aborted = true;
      add_flag("nan residual");
      residual = INFINITY;
    }
    if (residual > report_.worst_residual) {
      report_.worst_residual = residual;
      report_.worst_witness = witness();
    }
  }

  void add_flag(const std::string& flag)
  {
    for (const auto& f : report_.flags)
      if (f == flag) return;
    report_.flags.push_back(flag);
  }

  void fail(const std::string& reason)
  {
    failed_ = true;
    report_.aborted = true;
    add_flag(reason);
  }

  /// Folds another report in; the result passes only if both do. The
  /// tolerance becomes the larger of the two.
  void merge(const VerificationReport& other, bool keep_flags = true)
  {
    report_.checks += other.checks;
    tolerance_ = std::max(tolerance_, other.tolerance_used);
    report_.tolerance_used = tolerance_;
    if (!other.passed) failed_ = true;
    if (other.aborted) report_.aborted = true;
    if (other.worst_residual > report_.worst_residual) {
      report_.worst_residual = other.worst_residual;
      report_.worst_witness = other.worst_witness;
    }
    if (keep_flags || !other.passed)
      for (const auto& f : other.flags) add_flag(f);
  }

  VerificationReport finish() const
  {
    VerificationReport out = report_;
    if (out.checks == 0) out.worst_residual = 0.0;
    out.passed = !failed_ && out.checks > 0 && out.worst_residual <= tolerance_;
    if (out.checks == 0) out.flags.push_back("no checks ran");
    return out;
  }

 private:
  VerificationReport report_;
  double tolerance_;
  bool failed_ = false;
};

}  // namespace jnb
