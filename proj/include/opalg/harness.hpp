/**
 * @file  harness.hpp
 * @brief Verification campaigns, demos, and sweeps with deterministic
 *        reporting.
 *
 * A campaign is a named suite of randomized or exhaustive checks; every
 * suite draws from counter-based RNG streams addressed by
 * (seed, suite name, dimension, trial), so reports are byte-identical
 * across runs and thread schedules.  Violations are reported as
 * max(0, lhs − rhs) against the proven bound, keyed by stable invariant
 * ids, each with a tolerance pinned here (overridable per run).
 *
 * Elapsed times are kept in the in-memory reports for display but are
 * never serialized — the JSON/CSV outputs depend only on (config, seed).
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace opalg {

/// What to run and how hard: validated by validate().
struct CampaignConfig {
  std::vector<std::string> suites;  ///< empty → every known suite
  std::vector<int> dims = {2, 3, 4, 5, 6, 7, 8};
  int trials = 1000;                ///< base trial budget per suite and dim
  int samples = 100;                ///< sampler counts for upper-set suites
  uint64_t seed = 0;
  std::map<std::string, double> tolerances;  ///< overrides by violation id
  std::string out_dir;              ///< empty → no files written
  int sweep_seeds = 3;              ///< seeds per cell in run_sweep
  int threads = 0;                  ///< 0 → hardware concurrency

  /// trials >= 1, dims within [2, 64], all suite names known.
  void validate() const;
};

/// Outcome of one suite: max violation per invariant id, with the
/// tolerance it was judged against.  fail ⇔ some violation exceeds its
/// tolerance.
struct SuiteReport {
  std::string suite;
  int trials = 0;
  uint64_t seed = 0;
  std::map<std::string, double> violations;  ///< id → max violation seen
  std::map<std::string, double> tolerances;  ///< id → tolerance applied
  /// Per-dimension detail rows for the CSV mirror: id → dim → violation.
  std::map<std::string, std::map<int, double>> by_dim;
  bool pass = false;
  double elapsed_seconds = 0.0;  ///< display only; never serialized

  /// Recomputes `pass` from violations vs tolerances.
  void finalize();
};

/// All suite names run_verify understands, in canonical order.
const std::vector<std::string>& known_suites();

/// Runs the selected suites (all when config.suites is empty); writes
/// verify-<suite>.json and verify-<suite>.csv to config.out_dir when set.
/// Deterministic given the config.  Throws Error("unknown_suite") or
/// Error("io") as applicable.
std::vector<SuiteReport> run_verify(const CampaignConfig& config);

/// A demo's rendered output: human-readable text plus named CSV payloads
/// (file name → contents) for table and plot-data emission.
struct DemoResult {
  std::string text;
  std::map<std::string, std::string> files;
};

/// Demo names run_demo understands.
const std::vector<std::string>& known_demos();

/// Dispatches to the gallery: name ∈ {m2, wiggle, point-constrained,
/// boundedopen, nonuniqueness, boolean-filters}; args are flat key=value
/// strings (eps=0.5,0.1 grid=10000 modes=10 n=3 plot=1).
/// Throws Error("unknown_demo") for anything else.
DemoResult run_demo(const std::string& name,
                    const std::map<std::string, std::string>& args);

/// Writes every file payload of a demo result into `dir` (created if
/// needed).  Throws Error("io") on filesystem failures.
void write_demo_files(const std::string& dir, const DemoResult& result);

/// Cross-product campaign over config.dims × sweep_seeds consecutive
/// seeds; aggregates max violations per cell, one CSV per suite
/// (sweep-<suite>.csv) plus a sweep-summary.csv, written to out_dir when
/// set.  The returned reports are the per-cell results in row order.
std::vector<SuiteReport> run_sweep(const CampaignConfig& config);

// ---------------------------------------------------------------------------
// Serialization and configuration plumbing
// ---------------------------------------------------------------------------

/// {"suite":..., "trials":..., "violations":{id:max}, "pass":..., "seed":...}
/// with sorted keys and 17-significant-digit numbers.
std::string report_to_json(const SuiteReport& report);

/// CSV mirror, header inequality_id,n,trials,max_violation,seed; one row
/// per (id, dimension) pair (dimension 0 for model-independent checks).
std::string report_to_csv(const SuiteReport& report);

/// Parses flat `key=value` lines (# comments, blank lines allowed) into a
/// map; later keys override earlier ones.
std::map<std::string, std::string> parse_kv_text(const std::string& text);

/// Reads a key=value config file.  Throws Error("io") when unreadable.
std::map<std::string, std::string> parse_kv_file(const std::string& path);

/// Builds a config from key=value pairs: suites=a,b dims=2,3 trials=N
/// samples=N seed=N out=DIR sweep_seeds=N threads=N tol.<id>=X.
/// Unknown keys are rejected (Error("bad_config")).
CampaignConfig config_from_kv(const std::map<std::string, std::string>& kv);

}  // namespace opalg
