#ifndef NEHARI_COMMANDS_HPP
#define NEHARI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "nehari/checks.hpp"

namespace nehari {

/// "start:stop:count" with count >= 2 and start < stop.
struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

SweepSpec parse_sweep(const std::string& text); // throws std::invalid_argument

/// Shared parameter block for the command implementations; the CLI fills
/// it from flags, an optional JSON config file, and defaults (in that
/// precedence order).
struct RunConfig {
  int N = 4;
  std::optional<double> mu;
  std::optional<SweepSpec> mu_sweep;
  double lambda_frac = 0.5;
  double R = 1.0;
  int M = 256;
  std::string out;
  std::uint64_t seed = 0;
};

/// Regime table over mu: one row per sweep point plus exact rows at the
/// regime boundaries, columns mu,regime,k,l,A_over_S_half_N,
/// semitrivial_over_S_half_N.
std::string levels_csv(const RunConfig& cfg);

/// Coupling roots and system residuals per mu.
std::string coupling_csv(const RunConfig& cfg);

/// Single-row table of mu_N, mu_star and the admissible-interval end.
std::string thresholds_csv(const RunConfig& cfg);

struct SolveOutput {
  std::string summary_csv;
  std::string profile;
};

/// Ground-state solve at (lambda_frac * lambda_1, mu); summary row plus the
/// nodal profile dump.
SolveOutput run_solve(const RunConfig& cfg);

/// Instanton-quadrature identity checks for the configured dimension.
std::string limit_check_csv(const RunConfig& cfg, bool* all_pass);

/// Solve followed by the variational-identity residual row.
std::string pohozaev_csv(const RunConfig& cfg);

/// Full invariant report; sets *all_pass accordingly.
std::string verify_report(const CheckOptions& opts, bool* all_pass);

} // namespace nehari

#endif
