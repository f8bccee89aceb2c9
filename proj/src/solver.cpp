#include "billiards/solver.hpp"

#include "billiards/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace billiards {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_budget_args(const Budget& budget) {
  if (budget.max_nodes == 0 || budget.max_millis <= 0)
    throw std::invalid_argument("budget must be positive");
}

// Lexicographically smallest among equal-length candidates, longer always
// wins. Keeps reports deterministic.
void offer(Trajectory& best, const std::vector<int>& candidate) {
  if (candidate.size() > best.indices.size() ||
      (candidate.size() == best.indices.size() && candidate < best.indices))
    best.indices = candidate;
}

}  // namespace

const char* to_string(SolveStatus status) {
  return status == SolveStatus::ProvedOptimal ? "PROVED_OPTIMAL" : "BUDGET_EXHAUSTED";
}

ValidationResult validate_trajectory(const Configuration& config,
                                     const std::vector<int>& indices,
                                     const AnglePolicy& policy) {
  const int n = config.size();
  for (int idx : indices)
    if (idx < 0 || idx >= n)
      throw std::out_of_range("trajectory index out of range: " + std::to_string(idx));

  ValidationResult result;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (std::size_t pos = 0; pos < indices.size(); ++pos) {
    const int idx = indices[pos];
    if (seen[static_cast<std::size_t>(idx)]) {
      result.ok = false;
      result.reason = ValidationResult::Reason::DuplicateVertex;
      result.vertex = static_cast<int>(pos) + 1;
      result.message = "duplicate vertex at position " + std::to_string(pos + 1);
      return result;
    }
    seen[static_cast<std::size_t>(idx)] = true;
  }

  for (std::size_t j = 1; j + 1 < indices.size(); ++j) {
    const Point& prev = config.points[static_cast<std::size_t>(indices[j - 1])];
    const Point& cur = config.points[static_cast<std::size_t>(indices[j])];
    const Point& next = config.points[static_cast<std::size_t>(indices[j + 1])];
    if (!turn_admissible(prev, cur, next, policy)) {
      result.ok = false;
      result.reason = ValidationResult::Reason::BadAngle;
      result.vertex = static_cast<int>(j) + 1;
      result.message = "inadmissible turn at vertex " + std::to_string(j + 1);
      return result;
    }
  }
  return result;
}

TransitionGraph build_transition_graph(const Configuration& config,
                                       const AnglePolicy& policy) {
  const int n = config.size();
  if (n > 64) throw std::invalid_argument("transition graph limited to n <= 64");

  TransitionGraph graph;
  graph.n = n;
  graph.masks.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::uint64_t mask = 0;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (turn_admissible(config.points[i], config.points[j], config.points[k], policy))
          mask |= 1ULL << k;
      }
      graph.masks[static_cast<std::size_t>(i) * n + j] = mask;
    }
  return graph;
}

SolveReport brute_force_longest(const Configuration& config, const AnglePolicy& policy) {
  validate_configuration(config);
  const int n = config.size();
  if (n > 10) throw std::runtime_error("oracle limit: brute force supports n <= 10");

  const auto start = Clock::now();
  SolveReport report;
  report.mode = "oracle";
  report.policy = policy;
  report.status = SolveStatus::ProvedOptimal;

  std::vector<int> path;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  path.reserve(static_cast<std::size_t>(n));

  // plain exhaustive extension; no ordering, no pruning
  auto dfs = [&](auto&& self) -> void {
    ++report.nodes_expanded;
    offer(report.best, path);
    for (int k = 0; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      if (path.size() >= 2 &&
          !turn_admissible(config.points[static_cast<std::size_t>(path[path.size() - 2])],
                           config.points[static_cast<std::size_t>(path.back())],
                           config.points[static_cast<std::size_t>(k)], policy))
        continue;
      used[static_cast<std::size_t>(k)] = true;
      path.push_back(k);
      self(self);
      path.pop_back();
      used[static_cast<std::size_t>(k)] = false;
    }
  };
  dfs(dfs);

  report.best_length = report.best.length();
  report.wall_ms = elapsed_ms(start);
  return report;
}

SolveReport exact_longest(const Configuration& config, const AnglePolicy& policy,
                          const Budget& budget) {
  validate_configuration(config);
  check_budget_args(budget);
  const int n = config.size();
  if (n > 64) throw std::invalid_argument("exact solver limited to n <= 64 points");

  const auto start = Clock::now();
  SolveReport report;
  report.mode = "exact";
  report.policy = policy;
  report.budget = budget;

  const TransitionGraph graph = build_transition_graph(config, policy);

  // Children of a state (.., cur) are tried by descending successor count
  // of the pair (cur, k); the order depends on cur only.
  std::vector<std::vector<int>> order(static_cast<std::size_t>(n));
  for (int cur = 0; cur < n; ++cur) {
    auto& ord = order[static_cast<std::size_t>(cur)];
    ord.resize(static_cast<std::size_t>(n));
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
      return std::popcount(graph.successors(cur, a)) > std::popcount(graph.successors(cur, b));
    });
  }

  bool exhausted = false;
  std::vector<int> path;
  path.reserve(static_cast<std::size_t>(n));
  report.best.indices = {0};

  auto out_of_budget = [&]() {
    if (report.nodes_expanded >= budget.max_nodes) return true;
    if ((report.nodes_expanded & 1023) == 0 && elapsed_ms(start) >= static_cast<double>(budget.max_millis))
      return true;
    return false;
  };

  auto dfs = [&](auto&& self, std::uint64_t visited, int prev, int cur) -> void {
    if (exhausted) return;
    if (out_of_budget()) {
      exhausted = true;
      return;
    }
    ++report.nodes_expanded;
    offer(report.best, path);
    // remaining-point bound; cuts the search once a full-length trajectory
    // is already in hand
    if (static_cast<int>(path.size()) + (n - std::popcount(visited)) <=
        report.best.length())
      return;
    const std::uint64_t candidates = graph.successors(prev, cur) & ~visited;
    if (candidates == 0) return;
    for (int k : order[static_cast<std::size_t>(cur)]) {
      if (!((candidates >> k) & 1)) continue;
      path.push_back(k);
      self(self, visited | (1ULL << k), cur, k);
      path.pop_back();
      if (exhausted) return;
    }
  };

  for (int i = 0; i < n && !exhausted; ++i) {
    for (int j = 0; j < n && !exhausted; ++j) {
      if (i == j) continue;
      path.assign({i, j});
      dfs(dfs, (1ULL << i) | (1ULL << j), i, j);
    }
  }
  path.clear();

  report.best_length = report.best.length();
  report.status = exhausted ? SolveStatus::BudgetExhausted : SolveStatus::ProvedOptimal;
  report.wall_ms = elapsed_ms(start);
  return report;
}

namespace {

struct DynBits {
  std::vector<std::uint64_t> words;

  explicit DynBits(int n) : words(static_cast<std::size_t>((n + 63) / 64), 0) {}
  bool test(int i) const { return (words[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1; }
  void set(int i) { words[static_cast<std::size_t>(i) >> 6] |= 1ULL << (i & 63); }
};

struct BeamState {
  std::vector<int> path;
  DynBits visited;
};

}  // namespace

SolveReport beam_longest(const Configuration& config, const AnglePolicy& policy,
                         int beam_width, int restarts, std::uint64_t seed) {
  validate_configuration(config);
  if (beam_width < 1) throw std::invalid_argument("beam width must be >= 1");
  restarts = std::max(restarts, 1);
  const int n = config.size();

  const auto start = Clock::now();
  SolveReport report;
  report.mode = "beam";
  report.policy = policy;
  report.status = SolveStatus::BudgetExhausted;  // a heuristic never proves
  report.best.indices = {0};

  const auto admissible = [&](int a, int b, int c) {
    return turn_admissible(config.points[static_cast<std::size_t>(a)],
                           config.points[static_cast<std::size_t>(b)],
                           config.points[static_cast<std::size_t>(c)], policy);
  };

  struct Candidate {
    int state;
    int vertex;
    int avail;
    std::uint64_t jitter;
  };

  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(seed + static_cast<std::uint64_t>(r));

    std::vector<BeamState> level;
    for (int i = 0; i < n; ++i) {
      BeamState s{{i}, DynBits(n)};
      s.visited.set(i);
      level.push_back(std::move(s));
    }

    while (!level.empty()) {
      std::vector<Candidate> candidates;
      for (int si = 0; si < static_cast<int>(level.size()); ++si) {
        const BeamState& s = level[static_cast<std::size_t>(si)];
        const int cur = s.path.back();
        const int prev = s.path.size() >= 2 ? s.path[s.path.size() - 2] : -1;
        for (int k = 0; k < n; ++k) {
          if (s.visited.test(k)) continue;
          if (prev >= 0 && !admissible(prev, cur, k)) continue;
          int avail = 0;
          for (int t = 0; t < n; ++t) {
            if (t == k || s.visited.test(t)) continue;
            if (admissible(cur, k, t)) ++avail;
          }
          candidates.push_back({si, k, avail, rng.next()});
          ++report.nodes_expanded;
        }
      }
      if (candidates.empty()) break;

      std::sort(candidates.begin(), candidates.end(),
                [](const Candidate& a, const Candidate& b) {
                  if (a.avail != b.avail) return a.avail > b.avail;
                  if (a.jitter != b.jitter) return a.jitter < b.jitter;
                  if (a.state != b.state) return a.state < b.state;
                  return a.vertex < b.vertex;
                });
      if (static_cast<int>(candidates.size()) > beam_width)
        candidates.resize(static_cast<std::size_t>(beam_width));

      std::vector<BeamState> next;
      next.reserve(candidates.size());
      for (const Candidate& c : candidates) {
        BeamState s = level[static_cast<std::size_t>(c.state)];
        s.path.push_back(c.vertex);
        s.visited.set(c.vertex);
        offer(report.best, s.path);
        next.push_back(std::move(s));
      }
      level = std::move(next);
    }
  }

  report.best_length = report.best.length();
  report.wall_ms = elapsed_ms(start);
  return report;
}

std::string report_to_json(const SolveReport& report, const Configuration& config) {
  nlohmann::json doc;
  doc["config_ref"] = config_ref(config);
  doc["mode"] = report.mode;
  doc["policy_alpha_degrees"] = report.policy.alpha_degrees();
  doc["status"] = to_string(report.status);
  doc["best_length"] = report.best_length;
  doc["best_indices"] = report.best.indices;
  doc["nodes_expanded"] = report.nodes_expanded;
  doc["wall_ms"] = report.wall_ms;
  doc["budget"] = {{"max_nodes", report.budget.max_nodes},
                   {"max_millis", report.budget.max_millis}};
  return doc.dump(2) + "\n";
}

}  // namespace billiards
