#pragma once

#include "billiards/monotone.hpp"
#include "billiards/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace billiards {

// Largest k with k*k <= v.
long long isqrt(long long v);
// Smallest k with k*k >= v.
long long ceil_sqrt(long long v);

// The two ends of the square-root sandwich, in pure integer arithmetic:
// every n-point set admits a trajectory of length >= lower, and some
// n-point set caps every trajectory at <= upper.
struct BoundPair {
  long long n = 0;
  long long lower = 0;  // isqrt(n-1) + 1
  long long upper = 0;  // 3 * ceil_sqrt(n)
};

BoundPair bounds(long long n);

// One row of the verification report. Fields that do not apply to a given
// experiment stay at their "absent" defaults and serialize as empty CSV
// cells.
struct ExperimentRecord {
  std::string experiment_id;
  std::string generator;
  long long n = 0;
  int m = 0;                // 0 = not a ring configuration
  std::uint64_t seed = 0;
  bool has_seed = false;
  double alpha_deg = 90.0;
  long long lower_bound = 0;
  long long upper_bound = 0;
  int es_len = -1;          // -1 = lower-bound construction not run
  std::string solver_mode;  // "" = no solver run
  int solver_len = -1;
  std::string status;
  std::uint64_t nodes = 0;
  double wall_ms = 0.0;
  bool pass = false;
  std::string note;  // goes to the summary, not the CSV
};

// Runs the monotone construction against the configuration and checks the
// lower bound. A failure here would mean the construction is broken; it is
// recorded, never swallowed.
ExperimentRecord verify_lower_bound(const Configuration& config,
                                    const std::string& experiment_id = "lower");

// Generates the certified m-ring configuration and checks that no
// trajectory the solver can find beats 3m. Uses the exact solver for
// m*m <= 64, beam search beyond.
ExperimentRecord verify_upper_bound(int m, const Budget& budget = Budget{},
                                    const std::string& experiment_id = "upper");

// Exact solves across an ascending alpha grid (degrees, each in [0, 180)).
// Lengths of proved-optimal rows must be non-increasing; a violation marks
// both offending rows failed.
std::vector<ExperimentRecord> alpha_sweep(const Configuration& config,
                                          const std::vector<double>& alphas_deg,
                                          const Budget& budget = Budget{},
                                          const std::string& experiment_id = "sweep");

// A suite is a list of experiment descriptions; see suite_from_json for the
// document format and default_suite for the built-in set.
struct SuiteExperiment {
  std::string id;
  std::string kind;  // "oracle" | "lower" | "upper" | "sweep" | "fixture"
  std::string generator = "random";
  int n = 0;
  int m = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> alphas_deg;
  std::string fixture;  // "square" | "collinear" | "single" | "pair"
  int expected_len = -1;
  Budget budget;
};

struct SuiteSpec {
  std::string name = "default";
  std::vector<SuiteExperiment> experiments;
};

SuiteSpec default_suite();
SuiteSpec suite_from_json(const std::string& text);

struct SuiteResult {
  std::vector<ExperimentRecord> records;
  bool all_pass = false;
  std::string csv;
  std::string summary;
};

// Runs every experiment (optionally across `jobs` worker threads; records
// are sorted by a deterministic key, so the report does not depend on the
// schedule) and renders the CSV report plus a human summary. Reruns with
// the same suite are byte-identical except for the wall_ms column.
SuiteResult run_suite(const SuiteSpec& suite, int jobs = 1);

std::string records_to_csv(const std::vector<ExperimentRecord>& records);

}  // namespace billiards
