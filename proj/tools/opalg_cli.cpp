/**
 * @file  opalg_cli.cpp
 * @brief Command-line front end over the C API: verify / demo / sweep.
 *
 * Configuration precedence: OPALG_SEED environment variable, then the
 * --config key=value file, then explicit flags (strongest).  The merged
 * key=value text is handed to the library verbatim, so the CLI and the C
 * API accept exactly the same configuration language.
 */
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opalg.h"

namespace {

/// Reads a whole file or exits with a usage error.
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config file '" << path << "'\n";
    std::exit(2);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Owned-string RAII for char* results from the C API.
struct CStr {
  char* p = nullptr;
  ~CStr() { opalg_string_free(p); }
  const char* get() const { return p ? p : ""; }
};

[[noreturn]] void fail(const char* what) {
  std::cerr << "error: " << what << ": " << opalg_last_error() << "\n";
  std::exit(2);
}

/// Campaign flags shared by `verify` and `sweep`.
struct CampaignFlags {
  std::string config_path;
  std::vector<std::string> suites;
  std::string dims;
  int trials = -1;
  int samples = -1;
  long long seed = -1;
  int threads = -1;
  int sweep_seeds = -1;
  std::string out_dir;
  std::vector<std::string> tol;

  void attach(CLI::App* cmd, bool with_sweep_seeds) {
    cmd->add_option("--config", config_path,
                    "key=value config file (one pair per line)");
    cmd->add_option("--suite", suites, "suite name (repeatable)");
    cmd->add_option("--dims", dims, "comma-separated matrix dimensions");
    cmd->add_option("--trials", trials, "trials per suite and dimension");
    cmd->add_option("--samples", samples, "upper-set samples per instance");
    cmd->add_option("--seed", seed, "campaign seed (overrides OPALG_SEED)");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", out_dir, "directory for JSON/CSV reports");
    cmd->add_option("--tol", tol,
                    "tolerance override ID=VALUE (repeatable)");
    if (with_sweep_seeds)
      cmd->add_option("--sweep-seeds", sweep_seeds,
                      "consecutive seeds per sweep cell");
  }

  std::string merged_kv() const {
    std::ostringstream kv;
    if (const char* env = std::getenv("OPALG_SEED"))
      kv << "seed=" << env << "\n";
    if (!config_path.empty()) kv << slurp(config_path) << "\n";
    if (!suites.empty()) {
      kv << "suites=";
      for (size_t i = 0; i < suites.size(); ++i)
        kv << (i ? "," : "") << suites[i];
      kv << "\n";
    }
    if (!dims.empty()) kv << "dims=" << dims << "\n";
    if (trials >= 0) kv << "trials=" << trials << "\n";
    if (samples >= 0) kv << "samples=" << samples << "\n";
    if (seed >= 0) kv << "seed=" << seed << "\n";
    if (threads >= 0) kv << "threads=" << threads << "\n";
    if (sweep_seeds >= 0) kv << "sweep_seeds=" << sweep_seeds << "\n";
    if (!out_dir.empty()) kv << "out=" << out_dir << "\n";
    for (const auto& t : tol) kv << "tol." << t << "\n";
    return kv.str();
  }
};

int run_campaign(const CampaignFlags& flags, bool sweep) {
  const std::string kv = flags.merged_kv();
  CStr json;
  int all_pass = 0;
  const opalg_status st =
      sweep ? opalg_sweep(kv.c_str(), &json.p, &all_pass)
            : opalg_verify(kv.c_str(), &json.p, &all_pass);
  if (st != OPALG_OK) fail(sweep ? "sweep" : "verify");
  std::cout << json.get() << "\n";
  if (!flags.out_dir.empty())
    std::cout << "reports written to " << flags.out_dir << "\n";
  std::cout << (all_pass ? "all suites passed" : "SUITE FAILURES PRESENT")
            << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-order distance toolkit"};
  app.require_subcommand(1);

  CStr suites_csv, demos_csv;
  if (opalg_known_suites(&suites_csv.p) != OPALG_OK ||
      opalg_known_demos(&demos_csv.p) != OPALG_OK)
    fail("registry");

  // verify ------------------------------------------------------------
  CampaignFlags verify_flags;
  CLI::App* verify = app.add_subcommand(
      "verify",
      std::string("run verification suites (available: ") +
          suites_csv.get() + ")");
  verify_flags.attach(verify, /*with_sweep_seeds=*/false);

  // demo --------------------------------------------------------------
  std::string demo_name, demo_eps, demo_out;
  int demo_grid = -1, demo_modes = -1, demo_funcs = -1, demo_n = -1;
  double demo_theta = std::nan("");
  bool emit_plot = false;
  CLI::App* demo = app.add_subcommand(
      "demo", std::string("run a worked example (available: ") +
                  demos_csv.get() + ")");
  demo->add_option("name", demo_name, "demo name")->required();
  demo->add_option("--eps", demo_eps, "comma-separated amplitudes (wiggle)");
  demo->add_option("--grid", demo_grid, "grid points");
  demo->add_option("--theta", demo_theta, "angle (point-constrained)");
  demo->add_option("--modes", demo_modes, "mode count (boundedopen)");
  demo->add_option("--funcs", demo_funcs, "window count (nonuniqueness)");
  demo->add_option("--n", demo_n, "atom count (boolean-filters)");
  demo->add_flag("--emit-plot-data", emit_plot,
                 "also write per-grid-point plot CSVs");
  demo->add_option("--out", demo_out, "directory for data files");

  // sweep --------------------------------------------------------------
  CampaignFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "seed x dimension sweep over the dimension-parametric suites");
  sweep_flags.attach(sweep, /*with_sweep_seeds=*/true);

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) return run_campaign(verify_flags, /*sweep=*/false);
  if (sweep->parsed()) return run_campaign(sweep_flags, /*sweep=*/true);

  // demo
  std::ostringstream kv;
  if (!demo_eps.empty()) kv << "eps=" << demo_eps << "\n";
  if (demo_grid >= 0) kv << "grid=" << demo_grid << "\n";
  if (!std::isnan(demo_theta)) kv << "theta=" << demo_theta << "\n";
  if (demo_modes >= 0) kv << "modes=" << demo_modes << "\n";
  if (demo_funcs >= 0) kv << "funcs=" << demo_funcs << "\n";
  if (demo_n >= 0) kv << "n=" << demo_n << "\n";
  if (emit_plot) kv << "plot=1\n";
  if (!demo_out.empty()) kv << "out=" << demo_out << "\n";

  CStr text;
  if (opalg_demo(demo_name.c_str(), kv.str().c_str(), &text.p) != OPALG_OK)
    fail("demo");
  std::cout << text.get();
  if (!demo_out.empty()) std::cout << "data files written to " << demo_out << "\n";
  return 0;
}
