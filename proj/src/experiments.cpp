#include "billiards/experiments.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace billiards {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

long long isqrt(long long v) {
  if (v < 0) throw std::invalid_argument("isqrt of a negative value");
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

long long ceil_sqrt(long long v) {
  if (v <= 0) return 0;
  return isqrt(v - 1) + 1;
}

BoundPair bounds(long long n) {
  if (n < 1) throw std::invalid_argument("bounds: n must be >= 1");
  return BoundPair{n, isqrt(n - 1) + 1, 3 * ceil_sqrt(n)};
}

namespace {

void fill_from_meta(ExperimentRecord& rec, const Configuration& config) {
  rec.generator = config.meta.generator;
  rec.n = config.size();
  if (config.meta.seed) {
    rec.seed = *config.meta.seed;
    rec.has_seed = true;
  }
}

}  // namespace

ExperimentRecord verify_lower_bound(const Configuration& config,
                                    const std::string& experiment_id) {
  const auto start = Clock::now();
  ExperimentRecord rec;
  rec.experiment_id = experiment_id;
  fill_from_meta(rec, config);

  const BoundPair bp = bounds(config.size());
  rec.lower_bound = bp.lower;
  rec.upper_bound = bp.upper;

  const EsTrajectory es = es_trajectory(config);
  rec.es_len = es.trajectory.length();
  const auto check = validate_trajectory(config, es.trajectory.indices,
                                         AnglePolicy::exact_right_angle());
  rec.pass = check.ok && rec.es_len >= bp.lower;
  if (!rec.pass) rec.note = "lower bound violated: " + check.message;
  rec.wall_ms = elapsed_ms(start);
  return rec;
}

ExperimentRecord verify_upper_bound(int m, const Budget& budget,
                                    const std::string& experiment_id) {
  const auto start = Clock::now();
  const Configuration config = generate_nested_rings(m);  // certified or throws

  ExperimentRecord rec;
  rec.experiment_id = experiment_id;
  fill_from_meta(rec, config);
  rec.m = m;

  const BoundPair bp = bounds(config.size());
  rec.lower_bound = bp.lower;
  rec.upper_bound = bp.upper;  // equals 3m for the full m*m set

  const AnglePolicy policy = AnglePolicy::exact_right_angle();
  const SolveReport rep = config.size() <= 64
                              ? exact_longest(config, policy, budget)
                              : beam_longest(config, policy, 2 * config.size(), 4, 1);
  rec.solver_mode = rep.mode;
  rec.solver_len = rep.best_length;
  rec.status = to_string(rep.status);
  rec.nodes = rep.nodes_expanded;

  // Even a heuristic result must respect the cap: any trajectory longer
  // than 3m would falsify the construction outright.
  const bool valid = validate_trajectory(config, rep.best.indices, policy).ok;
  rec.pass = valid && rep.best_length <= bp.upper;
  if (!rec.pass) rec.note = "upper bound violated";
  rec.wall_ms = elapsed_ms(start);
  return rec;
}

std::vector<ExperimentRecord> alpha_sweep(const Configuration& config,
                                          const std::vector<double>& alphas_deg,
                                          const Budget& budget,
                                          const std::string& experiment_id) {
  if (!std::is_sorted(alphas_deg.begin(), alphas_deg.end()))
    throw std::invalid_argument("alpha grid must be ascending");
  for (double a : alphas_deg)
    if (!(a >= 0.0) || !(a < 180.0))
      throw std::invalid_argument("alpha must lie in [0, 180) degrees");

  const BoundPair bp = bounds(config.size());
  std::vector<ExperimentRecord> rows;
  rows.reserve(alphas_deg.size());

  for (double alpha : alphas_deg) {
    const auto start = Clock::now();
    const AnglePolicy policy = AnglePolicy::from_degrees(alpha);
    const SolveReport rep = exact_longest(config, policy, budget);

    ExperimentRecord rec;
    rec.experiment_id = experiment_id;
    fill_from_meta(rec, config);
    rec.alpha_deg = alpha;
    rec.lower_bound = bp.lower;
    rec.upper_bound = bp.upper;
    rec.solver_mode = rep.mode;
    rec.solver_len = rep.best_length;
    rec.status = to_string(rep.status);
    rec.nodes = rep.nodes_expanded;
    rec.pass = validate_trajectory(config, rep.best.indices, policy).ok;
    rec.wall_ms = elapsed_ms(start);
    rows.push_back(std::move(rec));
  }

  // widening the excluded cone can only lose trajectories
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i - 1].status != "PROVED_OPTIMAL" || rows[i].status != "PROVED_OPTIMAL")
      continue;
    if (rows[i].solver_len > rows[i - 1].solver_len) {
      rows[i - 1].pass = rows[i].pass = false;
      rows[i].note = "alpha monotonicity violated";
    }
  }
  return rows;
}

namespace {

Configuration configuration_for(const SuiteExperiment& e, std::uint64_t seed) {
  if (e.generator == "random") return generate_random(e.n, seed);
  if (e.generator == "collinear") return generate_collinear(e.n);
  if (e.generator == "grid") return generate_grid(e.n);
  if (e.generator == "nested") return generate_nested_rings(e.m == 0 ? e.n : e.m);
  throw std::invalid_argument("unknown generator: " + e.generator);
}

std::vector<ExperimentRecord> run_experiment(const SuiteExperiment& e) {
  std::vector<ExperimentRecord> rows;

  if (e.kind == "oracle") {
    for (std::uint64_t seed : e.seeds) {
      const auto start = Clock::now();
      const Configuration c = generate_random(e.n, seed);
      const SolveReport exact = exact_longest(c, AnglePolicy::exact_right_angle(), e.budget);
      const SolveReport oracle = brute_force_longest(c, AnglePolicy::exact_right_angle());

      ExperimentRecord rec;
      rec.experiment_id = e.id;
      fill_from_meta(rec, c);
      const BoundPair bp = bounds(c.size());
      rec.lower_bound = bp.lower;
      rec.upper_bound = bp.upper;
      rec.solver_mode = "exact+oracle";
      rec.solver_len = exact.best_length;
      rec.status = to_string(exact.status);
      rec.nodes = exact.nodes_expanded + oracle.nodes_expanded;
      rec.pass = exact.status == SolveStatus::ProvedOptimal &&
                 exact.best_length == oracle.best_length;
      if (!rec.pass)
        rec.note = "oracle mismatch: exact " + std::to_string(exact.best_length) +
                   " vs brute " + std::to_string(oracle.best_length);
      rec.wall_ms = elapsed_ms(start);
      rows.push_back(std::move(rec));
    }
    return rows;
  }

  if (e.kind == "lower") {
    if (e.generator == "random") {
      for (std::uint64_t seed : e.seeds)
        rows.push_back(verify_lower_bound(generate_random(e.n, seed), e.id));
    } else {
      rows.push_back(verify_lower_bound(configuration_for(e, 0), e.id));
    }
    return rows;
  }

  if (e.kind == "upper") {
    rows.push_back(verify_upper_bound(e.m, e.budget, e.id));
    return rows;
  }

  if (e.kind == "sweep") {
    const std::uint64_t seed = e.seeds.empty() ? 0 : e.seeds.front();
    return alpha_sweep(configuration_for(e, seed), e.alphas_deg, e.budget, e.id);
  }

  if (e.kind == "fixture") {
    const auto start = Clock::now();
    Configuration c;
    int expected = e.expected_len;
    if (e.fixture == "square") {
      c = generate_grid(2);
      if (expected < 0) expected = 2;
    } else if (e.fixture == "collinear") {
      c = generate_collinear(e.n);
      if (expected < 0) expected = e.n;
    } else if (e.fixture == "single") {
      c = generate_collinear(1);
      if (expected < 0) expected = 1;
    } else if (e.fixture == "pair") {
      c = generate_collinear(2);
      if (expected < 0) expected = 2;
    } else {
      throw std::invalid_argument("unknown fixture: " + e.fixture);
    }

    const SolveReport rep = exact_longest(c, AnglePolicy::exact_right_angle(), e.budget);
    ExperimentRecord rec;
    rec.experiment_id = e.id;
    rec.generator = e.fixture;
    rec.n = c.size();
    const BoundPair bp = bounds(c.size());
    rec.lower_bound = bp.lower;
    rec.upper_bound = bp.upper;
    rec.solver_mode = rep.mode;
    rec.solver_len = rep.best_length;
    rec.status = to_string(rep.status);
    rec.nodes = rep.nodes_expanded;
    rec.pass = rep.status == SolveStatus::ProvedOptimal && rep.best_length == expected;
    if (!rec.pass)
      rec.note = "expected " + std::to_string(expected) + ", got " +
                 std::to_string(rep.best_length);
    rec.wall_ms = elapsed_ms(start);
    rows.push_back(std::move(rec));
    return rows;
  }

  throw std::invalid_argument("unknown experiment kind: " + e.kind);
}

}  // namespace

SuiteSpec default_suite() {
  SuiteSpec suite;
  suite.name = "default";

  for (int n = 4; n <= 8; ++n) {
    SuiteExperiment e;
    e.id = "oracle-n" + std::to_string(n);
    e.kind = "oracle";
    e.n = n;
    for (std::uint64_t s = 1; s <= 10; ++s) e.seeds.push_back(s);
    suite.experiments.push_back(std::move(e));
  }

  for (int n : {10, 25, 50}) {
    SuiteExperiment e;
    e.id = "lower-n" + std::to_string(n);
    e.kind = "lower";
    e.n = n;
    for (std::uint64_t s = 1; s <= 25; ++s) e.seeds.push_back(s);
    suite.experiments.push_back(std::move(e));
  }

  for (int m : {2, 3, 4}) {
    SuiteExperiment e;
    e.id = "upper-m" + std::to_string(m);
    e.kind = "upper";
    e.m = m;
    suite.experiments.push_back(std::move(e));
  }

  {
    SuiteExperiment e;
    e.id = "sweep-random7";
    e.kind = "sweep";
    e.generator = "random";
    e.n = 7;
    e.seeds = {42};
    e.alphas_deg = {0, 30, 60, 90, 120, 150};
    suite.experiments.push_back(std::move(e));
  }

  const struct {
    const char* id;
    const char* fixture;
    int n;
  } fixtures[] = {{"fixture-square", "square", 0},    {"fixture-collinear3", "collinear", 3},
                  {"fixture-collinear5", "collinear", 5}, {"fixture-collinear10", "collinear", 10},
                  {"fixture-single", "single", 0},    {"fixture-pair", "pair", 0}};
  for (const auto& f : fixtures) {
    SuiteExperiment e;
    e.id = f.id;
    e.kind = "fixture";
    e.fixture = f.fixture;
    e.n = f.n;
    suite.experiments.push_back(std::move(e));
  }

  return suite;
}

SuiteSpec suite_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::runtime_error(std::string("suite document: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("experiments") || !doc["experiments"].is_array())
    throw std::runtime_error("suite document: missing \"experiments\" array");

  SuiteSpec suite;
  if (doc.contains("name")) suite.name = doc["name"].get<std::string>();

  int counter = 0;
  for (const nlohmann::json& je : doc["experiments"]) {
    SuiteExperiment e;
    e.id = je.value("id", "experiment-" + std::to_string(counter));
    e.kind = je.value("kind", "");
    e.generator = je.value("generator", "random");
    e.n = je.value("n", 0);
    e.m = je.value("m", 0);
    e.fixture = je.value("fixture", "");
    e.expected_len = je.value("expected_len", -1);
    if (je.contains("seeds"))
      for (const auto& s : je["seeds"]) e.seeds.push_back(s.get<std::uint64_t>());
    if (je.contains("alphas_deg"))
      for (const auto& a : je["alphas_deg"]) e.alphas_deg.push_back(a.get<double>());
    if (je.contains("node_budget")) e.budget.max_nodes = je["node_budget"].get<std::uint64_t>();
    if (je.contains("time_budget_ms"))
      e.budget.max_millis = je["time_budget_ms"].get<std::int64_t>();

    const std::string at = "suite experiment \"" + e.id + "\": ";
    if (e.kind == "oracle") {
      if (e.n < 1 || e.n > 10) throw std::runtime_error(at + "oracle needs 1 <= n <= 10");
      if (e.seeds.empty()) throw std::runtime_error(at + "oracle needs seeds");
    } else if (e.kind == "lower") {
      if (e.generator == "random" && (e.n < 1 || e.seeds.empty()))
        throw std::runtime_error(at + "lower needs n >= 1 and seeds");
    } else if (e.kind == "upper") {
      if (e.m < 1) throw std::runtime_error(at + "upper needs m >= 1");
    } else if (e.kind == "sweep") {
      if (e.alphas_deg.empty()) throw std::runtime_error(at + "sweep needs alphas_deg");
    } else if (e.kind == "fixture") {
      if (e.fixture.empty()) throw std::runtime_error(at + "fixture needs a name");
    } else {
      throw std::runtime_error(at + "unknown kind \"" + e.kind + "\"");
    }
    suite.experiments.push_back(std::move(e));
    ++counter;
  }
  return suite;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::string csv =
      "experiment_id,generator,n,m,seed,alpha_deg,lower_bound,upper_bound,es_len,"
      "solver_mode,solver_len,status,nodes,wall_ms,pass\n";
  for (const ExperimentRecord& r : records) {
    csv += r.experiment_id;
    csv += ',';
    csv += r.generator;
    csv += ',';
    csv += std::to_string(r.n);
    csv += ',';
    if (r.m > 0) csv += std::to_string(r.m);
    csv += ',';
    if (r.has_seed) csv += std::to_string(r.seed);
    csv += ',';
    csv += fmt_g(r.alpha_deg);
    csv += ',';
    csv += std::to_string(r.lower_bound);
    csv += ',';
    csv += std::to_string(r.upper_bound);
    csv += ',';
    if (r.es_len >= 0) csv += std::to_string(r.es_len);
    csv += ',';
    csv += r.solver_mode;
    csv += ',';
    if (r.solver_len >= 0) csv += std::to_string(r.solver_len);
    csv += ',';
    csv += r.status;
    csv += ',';
    csv += std::to_string(r.nodes);
    csv += ',';
    csv += fmt_ms(r.wall_ms);
    csv += ',';
    csv += r.pass ? '1' : '0';
    csv += '\n';
  }
  return csv;
}

SuiteResult run_suite(const SuiteSpec& suite, int jobs) {
  const std::size_t count = suite.experiments.size();
  std::vector<std::vector<ExperimentRecord>> buckets(count);

  jobs = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> cursor{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t idx = cursor.fetch_add(1);
      if (idx >= count) return;
      const SuiteExperiment& e = suite.experiments[idx];
      try {
        buckets[idx] = run_experiment(e);
      } catch (const std::exception& err) {
        // a hard failure becomes a failing row, never a silent skip
        ExperimentRecord rec;
        rec.experiment_id = e.id;
        rec.generator = e.generator;
        rec.n = e.n;
        rec.m = e.m;
        rec.pass = false;
        rec.note = err.what();
        rec.status = "ERROR";
        buckets[idx] = {std::move(rec)};
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SuiteResult result;
  for (auto& bucket : buckets)
    for (auto& rec : bucket) result.records.push_back(std::move(rec));

  std::stable_sort(result.records.begin(), result.records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     return std::tie(a.experiment_id, a.generator, a.n, a.m, a.seed,
                                     a.alpha_deg) <
                            std::tie(b.experiment_id, b.generator, b.n, b.m, b.seed,
                                     b.alpha_deg);
                   });

  result.all_pass = std::all_of(result.records.begin(), result.records.end(),
                                [](const ExperimentRecord& r) { return r.pass; });
  result.csv = records_to_csv(result.records);

  std::string summary = "suite " + suite.name + ": " +
                        std::to_string(result.records.size()) + " records, ";
  if (result.all_pass) {
    summary += "all passed";
  } else {
    int failures = 0;
    std::string detail;
    for (const ExperimentRecord& r : result.records)
      if (!r.pass) {
        ++failures;
        detail += "  FAILED " + r.experiment_id;
        if (r.has_seed) detail += " seed=" + std::to_string(r.seed);
        if (!r.note.empty()) detail += " (" + r.note + ")";
        detail += '\n';
      }
    summary += std::to_string(failures) + " FAILED\n" + detail;
  }
  result.summary = summary;
  return result;
}

}  // namespace billiards
