// qb_cli.cpp — command-line front end over the shared-library C API.

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "quantum_battery.h"

namespace {

// 1: rejected input (arguments, config, setting); 2: numerical failure.
int exit_code_for(qb_status s) {
  switch (s) {
    case QB_OK:
      return 0;
    case QB_ERR_INVALID_STATE:
    case QB_ERR_NUMERICAL:
      return 2;
    default:
      return 1;
  }
}

int report(qb_status s) {
  std::fprintf(stderr, "error: %s", qb_status_message(s));
  const char* d = qb_last_error_detail();
  if (d && *d) std::fprintf(stderr, " (%s)", d);
  std::fputc('\n', stderr);
  return exit_code_for(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collision-model quantum battery: simulation and analytics"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // accept global options after the subcommand name

  std::string config_path, out_path;
  std::int64_t threads = 0;
  double tolerance = 1.0;
  std::vector<std::string> overrides;
  app.add_option("-c,--config", config_path,
                 "flat `key = value` scenario file");
  app.add_option("-o,--out", out_path,
                 "output path (stem when the scenario writes several files)");
  auto* opt_threads =
      app.add_option("-j,--threads", threads, "worker threads (0 = all cores)");
  auto* opt_tol = app.add_option("--tolerance", tolerance,
                                 "numeric tolerance scale factor (> 0)");
  app.add_option("-s,--set", overrides,
                 "override a config entry as key=value (repeatable)");

  const std::pair<const char*, const char*> kSubs[] = {
      {"trajectory", "trajectory"},
      {"scan", "scan_theta_tau"},
      {"sweep", "sweep_na"},
      {"figure2", "figure2"},
      {"figure3", "figure3"},
      {"figure4", "figure4"},
      {"figure5", "figure5"},
      {"optimal", "optimal"},
  };
  const char* kDesc[] = {
      "one multi-collision charging run -> trajectory CSV",
      "final power over a (theta, tau) grid",
      "final power versus cluster size",
      "charging trajectories and level-distribution snapshots",
      "coherent charging front profile and Catalan table",
      "power panels: theta dependence, cluster sweep, (theta, tau) surface",
      "ergotropy, purity, and power along slow-collision charges",
      "optimal collision strengths and ridge table",
  };
  std::vector<CLI::App*> subapps;
  for (size_t i = 0; i < 8; ++i)
    subapps.push_back(app.add_subcommand(kSubs[i].first, kDesc[i]));

  CLI11_PARSE(app, argc, argv);

  qb_experiment* ex = nullptr;
  qb_status s = qb_experiment_load(
      config_path.empty() ? nullptr : config_path.c_str(), &ex);
  if (s != QB_OK) return report(s);

  std::string chosen;
  for (size_t i = 0; i < 8; ++i)
    if (subapps[i]->parsed()) chosen = kSubs[i].second;

  char configured[128] = {0};
  s = qb_experiment_get(ex, "scenario", configured, sizeof configured);
  if (s != QB_OK) {
    qb_experiment_free(ex);
    return report(s);
  }
  if (!chosen.empty()) {
    if (configured[0] != '\0' && chosen != configured) {
      std::fprintf(stderr,
                   "error: subcommand requests scenario '%s' but the config "
                   "sets '%s'\n",
                   chosen.c_str(), configured);
      qb_experiment_free(ex);
      return 1;
    }
    s = qb_experiment_set(ex, "scenario", chosen.c_str());
  }

  if (s == QB_OK && !out_path.empty())
    s = qb_experiment_set(ex, "output_path", out_path.c_str());
  if (s == QB_OK && opt_threads->count() > 0)
    s = qb_experiment_set(ex, "threads", std::to_string(threads).c_str());
  if (s == QB_OK && opt_tol->count() > 0)
    s = qb_experiment_set(ex, "numeric_tolerance",
                          std::to_string(tolerance).c_str());
  for (const std::string& kv : overrides) {
    if (s != QB_OK) break;
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                   kv.c_str());
      qb_experiment_free(ex);
      return 1;
    }
    s = qb_experiment_set(ex, kv.substr(0, eq).c_str(),
                          kv.substr(eq + 1).c_str());
  }
  if (s != QB_OK) {
    qb_experiment_free(ex);
    return report(s);
  }

  s = qb_experiment_execute(ex);
  if (s != QB_OK) {
    qb_experiment_free(ex);
    return report(s);
  }
  std::printf("%s\n", qb_experiment_summary(ex));
  qb_experiment_free(ex);
  return 0;
}
