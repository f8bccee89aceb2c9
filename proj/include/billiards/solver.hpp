#pragma once

#include "billiards/configuration.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace billiards {

// A candidate trajectory: ordered, distinct point indices. Admissibility is
// a property of the trajectory together with a policy; one or two vertices
// are vacuously admissible (there is no interior turn to constrain).
struct Trajectory {
  std::vector<int> indices;

  int length() const { return static_cast<int>(indices.size()); }
  bool operator==(const Trajectory& other) const = default;
};

struct ValidationResult {
  enum class Reason { None, DuplicateVertex, BadAngle };

  bool ok = true;
  Reason reason = Reason::None;
  int vertex = 0;  // 1-based position of the first offending vertex
  std::string message;
};

// Checks index distinctness and every interior turn; reports the first
// violation. Throws std::out_of_range for an index outside the
// configuration.
ValidationResult validate_trajectory(const Configuration& config,
                                     const std::vector<int>& indices,
                                     const AnglePolicy& policy);

// successors(i, j) = bitmask of the vertices k such that the turn at j
// coming from i and leaving towards k is admissible. Limited to n <= 64 so
// successor sets are single words.
struct TransitionGraph {
  int n = 0;
  std::vector<std::uint64_t> masks;  // n*n entries, masks[i*n+j]

  std::uint64_t successors(int i, int j) const { return masks[static_cast<std::size_t>(i) * n + j]; }
};

TransitionGraph build_transition_graph(const Configuration& config,
                                       const AnglePolicy& policy);

struct Budget {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  std::int64_t max_millis = std::numeric_limits<std::int64_t>::max();
};

enum class SolveStatus { ProvedOptimal, BudgetExhausted };

const char* to_string(SolveStatus status);

struct SolveReport {
  Trajectory best;
  int best_length = 0;
  SolveStatus status = SolveStatus::BudgetExhausted;
  std::uint64_t nodes_expanded = 0;
  double wall_ms = 0.0;
  AnglePolicy policy;
  std::string mode;  // "exact" | "beam" | "oracle"
  Budget budget;
};

// Exhaustive reference search, no pruning beyond admissibility itself.
// Guarded at n <= 10; throws "oracle limit" beyond that.
SolveReport brute_force_longest(const Configuration& config,
                                const AnglePolicy& policy);

// Depth-first branch and bound over the transition graph. State is
// (visited set, last two vertices); children are tried in order of
// decreasing successor degree. Within budget the result is the exact
// maximum trajectory length (status ProvedOptimal); on budget exhaustion
// the best trajectory found so far is returned. n <= 64.
SolveReport exact_longest(const Configuration& config, const AnglePolicy& policy,
                          const Budget& budget = Budget{});

// Seeded deterministic beam search; never claims optimality. Works for any
// n. States are scored by length, then by how many admissible continuations
// remain, with seeded jitter breaking ties across restarts.
SolveReport beam_longest(const Configuration& config, const AnglePolicy& policy,
                         int beam_width, int restarts, std::uint64_t seed);

// Report document: config_ref, mode, policy_alpha_degrees, status,
// best_length, best_indices, nodes_expanded, wall_ms, budget.
std::string report_to_json(const SolveReport& report, const Configuration& config);

}  // namespace billiards
