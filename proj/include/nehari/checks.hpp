#ifndef NEHARI_CHECKS_HPP
#define NEHARI_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace nehari {

/// One invariant check: the measured quantity, the bound it must respect,
/// and the direction-resolved verdict.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct CheckOptions {
  std::uint64_t seed = 0;
  /// Relative perturbation injected into the Sobolev constant used by the
  /// cross-module level comparisons; nonzero values must trip the
  /// level-consistency checks (sensitivity canary).
  double sobolev_perturbation = 0.0;
};

std::vector<CheckResult> limit_algebra_checks(const CheckOptions& opts = {});
std::vector<CheckResult> instanton_checks(const CheckOptions& opts = {});
std::vector<CheckResult> solver_checks(const CheckOptions& opts = {});
std::vector<CheckResult> cli_checks(const CheckOptions& opts = {});
std::vector<CheckResult> all_checks(const CheckOptions& opts = {});

} // namespace nehari

#endif
