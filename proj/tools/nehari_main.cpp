// Command-line front end: regime tables, coupling roots, thresholds,
// bounded-domain solves, limit-problem checks and the invariant suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nehari/checks.hpp"
#include "nehari/commands.hpp"
#include "nehari/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRegime = 3;

struct CliState {
  nehari::RunConfig cfg;
  std::string mu_sweep_text;
  double canary_perturb_S = 0.0;
};

// Configuration file: flat JSON keys mirroring the flags; flags win.
void apply_config_file(const std::string& path, CliState& st) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  if (j.contains("N")) st.cfg.N = j["N"].get<int>();
  if (j.contains("mu")) st.cfg.mu = j["mu"].get<double>();
  if (j.contains("mu_sweep")) st.mu_sweep_text = j["mu_sweep"].get<std::string>();
  if (j.contains("lambda_frac")) st.cfg.lambda_frac = j["lambda_frac"].get<double>();
  if (j.contains("R")) st.cfg.R = j["R"].get<double>();
  if (j.contains("M")) st.cfg.M = j["M"].get<int>();
  if (j.contains("out")) st.cfg.out = j["out"].get<std::string>();
  if (j.contains("seed")) st.cfg.seed = j["seed"].get<std::uint64_t>();
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::fputs(payload.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << payload;
}

std::string profile_path(const std::string& out) {
  if (out.empty()) return "profile.csv";
  const auto dot = out.rfind('.');
  if (dot == std::string::npos) return out + "_profile.csv";
  return out.substr(0, dot) + "_profile" + out.substr(dot);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"ground-state toolkit for a critically coupled elliptic system"};
  app.require_subcommand(1);

  CliState st;
  std::string config_path;

  // config file is applied before flag parsing so flags take precedence
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  if (!config_path.empty()) {
    try {
      apply_config_file(config_path, st);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  double mu_flag = 0.0;
  bool mu_given = false;
  auto add_common = [&](CLI::App* sub, bool with_grid) {
    sub->add_option("--config", config_path, "JSON config file (flat keys)");
    sub->add_option("--N", st.cfg.N, "ambient dimension (>= 4)")
        ->capture_default_str();
    sub->add_option("--mu", mu_flag, "coupling parameter mu >= 0")
        ->each([&](const std::string&) { mu_given = true; });
    sub->add_option("--mu-sweep", st.mu_sweep_text, "mu sweep start:stop:count");
    sub->add_option("--seed", st.cfg.seed, "seed for all randomized pieces")
        ->capture_default_str();
    sub->add_option("--out", st.cfg.out, "output path (default: stdout)");
    if (with_grid) {
      sub->add_option("--lambda-frac", st.cfg.lambda_frac,
                      "lambda as a fraction of lambda_1, in (0,1)")
          ->capture_default_str();
      sub->add_option("--R", st.cfg.R, "ball radius")->capture_default_str();
      sub->add_option("--M", st.cfg.M, "interior grid nodes (>= 64)")
          ->capture_default_str();
    }
  };

  auto* levels = app.add_subcommand("levels", "regime table of ground-state levels");
  add_common(levels, false);
  auto* coupling = app.add_subcommand("coupling", "coupling roots and residuals");
  add_common(coupling, false);
  auto* thresholds = app.add_subcommand("thresholds", "regime thresholds for N");
  add_common(thresholds, false);
  auto* solve = app.add_subcommand("solve", "ground-state solve on the ball");
  add_common(solve, true);
  auto* limit_check = app.add_subcommand("limit-check", "instanton quadrature identities");
  add_common(limit_check, false);
  auto* pohozaev = app.add_subcommand("pohozaev", "solve and report identity residuals");
  add_common(pohozaev, true);
  auto* verify = app.add_subcommand("verify", "run every invariant suite");
  add_common(verify, false);
  verify->add_option("--canary-perturb-S", st.canary_perturb_S,
                     "inject a relative Sobolev-constant perturbation (self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mu_given) st.cfg.mu = mu_flag;
    if (!st.mu_sweep_text.empty()) st.cfg.mu_sweep = nehari::parse_sweep(st.mu_sweep_text);

    if (levels->parsed()) {
      write_output(st.cfg.out, nehari::levels_csv(st.cfg));
    } else if (coupling->parsed()) {
      write_output(st.cfg.out, nehari::coupling_csv(st.cfg));
    } else if (thresholds->parsed()) {
      write_output(st.cfg.out, nehari::thresholds_csv(st.cfg));
    } else if (solve->parsed()) {
      const nehari::SolveOutput out = nehari::run_solve(st.cfg);
      write_output(st.cfg.out, out.summary_csv);
      write_output(profile_path(st.cfg.out), out.profile);
    } else if (limit_check->parsed()) {
      bool ok = true;
      write_output(st.cfg.out, nehari::limit_check_csv(st.cfg, &ok));
      if (!ok) return kExitInvariantFailure;
    } else if (pohozaev->parsed()) {
      write_output(st.cfg.out, nehari::pohozaev_csv(st.cfg));
    } else if (verify->parsed()) {
      nehari::CheckOptions copts;
      copts.seed = st.cfg.seed;
      copts.sobolev_perturbation = st.canary_perturb_S;
      bool ok = true;
      write_output(st.cfg.out, nehari::verify_report(copts, &ok));
      if (!ok) return kExitInvariantFailure;
    }
  } catch (const nehari::RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
  return kExitOk;
}
