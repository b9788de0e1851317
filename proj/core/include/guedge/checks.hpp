#pragma once

#include <string>
#include <vector>

namespace guedge {

/// One verification check: a named quantity compared against a pinned
/// tolerance. `measured` and `tolerance` are chosen so that pass means
/// measured <= tolerance after scaling.
struct CheckResult {
  std::string name;
  int criterion = 0;  // acceptance criterion this check belongs to
  std::string description;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<std::string> check_names();

/// Runs one check by name; tol_scale multiplies the pinned tolerance
/// (used to demonstrate tolerance semantics, not to loosen the defaults).
CheckResult run_check(const std::string& name, double tol_scale = 1.0);

std::vector<CheckResult> run_all_checks(double tol_scale = 1.0);

}  // namespace guedge
