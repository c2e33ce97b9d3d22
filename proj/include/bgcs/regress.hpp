#pragma once

#include <string>
#include <vector>

namespace bgcs {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  // Diagnostics are reported but never fail the run.
  bool asserted = true;
};

struct RegressOptions {
  // Relative perturbation applied to one closed-form coefficient before the
  // recurrence/closed-form comparison (sensitivity check of the runner).
  double closed_form_perturbation = 0.0;
};

/// Golden values, cross-oracle checks and properties.  Thresholds are fixed
/// in the implementation; the current-density threshold is versioned by
/// kCurrentThresholdVersion.
std::vector<CheckResult> run_regression(const RegressOptions& options = {});

inline constexpr const char* kCurrentThresholdVersion = "currents-v1";
inline constexpr double kCurrentThreshold = 1e-10;

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace bgcs
