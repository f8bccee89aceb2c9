#include "doctest.h"

#include "billiards/configuration.hpp"
#include "billiards/experiments.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace billiards;

namespace {

// Drops the wall_ms column so reports can be compared across runs.
std::string strip_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() >= 2) cells.erase(cells.end() - 2);  // wall_ms, before pass
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("integer square roots") {
  for (long long v = 0; v <= 2000; ++v) CHECK(isqrt(v) == oracles::isqrt_brute(v));
  for (long long k : {3LL, 10LL, 31623LL}) {
    CHECK(isqrt(k * k) == k);
    CHECK(isqrt(k * k - 1) == k - 1);
    CHECK(isqrt(k * k + 1) == k);
    CHECK(ceil_sqrt(k * k) == k);
    CHECK(ceil_sqrt(k * k + 1) == k + 1);
  }
  CHECK_THROWS_AS(isqrt(-1), std::invalid_argument);
}

TEST_CASE("bound pair formulas") {
  const BoundPair b5 = bounds(5);
  CHECK(b5.lower == 3);
  CHECK(b5.upper == 9);

  const BoundPair b1 = bounds(1);
  CHECK(b1.lower == 1);
  CHECK(b1.upper == 3);

  const BoundPair b9 = bounds(9);
  CHECK(b9.lower == 3);
  CHECK(b9.upper == 9);

  for (long long n = 1; n <= 500; ++n) {
    const BoundPair b = bounds(n);
    CHECK(b.lower == oracles::isqrt_brute(n - 1) + 1);
    CHECK(b.lower <= b.upper);
  }

  CHECK_THROWS_AS(bounds(0), std::invalid_argument);
}

TEST_CASE("lower-bound verification") {
  SUBCASE("collinear 10: construction finds the whole line") {
    const ExperimentRecord rec = verify_lower_bound(generate_collinear(10));
    CHECK(rec.pass);
    CHECK(rec.lower_bound == 4);
    CHECK(rec.es_len == 10);
    CHECK(rec.n == 10);
  }

  SUBCASE("single point") {
    const ExperimentRecord rec = verify_lower_bound(generate_collinear(1));
    CHECK(rec.pass);
    CHECK(rec.es_len == 1);
  }

  SUBCASE("random n = 50") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const ExperimentRecord rec = verify_lower_bound(generate_random(50, seed));
      CAPTURE(seed);
      CHECK(rec.pass);
      CHECK(rec.lower_bound == 8);
      CHECK(rec.es_len >= 8);
    }
  }
}

TEST_CASE("upper-bound verification") {
  SUBCASE("m = 2: the degenerate collinear ring set is fully traversable") {
    const ExperimentRecord rec = verify_upper_bound(2);
    CHECK(rec.pass);
    CHECK(rec.n == 4);
    CHECK(rec.m == 2);
    CHECK(rec.upper_bound == 6);
    CHECK(rec.status == "PROVED_OPTIMAL");
    CHECK(rec.solver_len == 4);  // brute force over the 4 collinear points
  }

  SUBCASE("m = 3") {
    const ExperimentRecord rec = verify_upper_bound(3);
    CHECK(rec.pass);
    CHECK(rec.upper_bound == 9);
    CHECK(rec.status == "PROVED_OPTIMAL");
    CHECK(rec.solver_len <= 9);
    CHECK(rec.solver_len >= 3);
  }
}

TEST_CASE("alpha sweep on the unit square") {
  const Configuration square = generate_grid(2);
  const auto rows = alpha_sweep(square, {0.0, 90.0, 179.0});
  REQUIRE(rows.size() == 3);

  // oracle values for the three policies
  std::vector<oracles::P> pts;
  for (const Point& p : square.points) pts.push_back({to_double(p.x), to_double(p.y)});
  const double pi = 3.14159265358979323846;
  const int at0 = oracles::longest_trajectory_brute(
      pts, [&](const oracles::P& a, const oracles::P& b, const oracles::P& c) {
        return oracles::turn_admissible_alpha(a, b, c, 0.0);
      });
  const int at90 = oracles::longest_obtuse_trajectory_brute(pts);
  const int at179 = oracles::longest_trajectory_brute(
      pts, [&](const oracles::P& a, const oracles::P& b, const oracles::P& c) {
        return oracles::turn_admissible_alpha(a, b, c, 179.0 * pi / 180.0);
      });
  CHECK(at0 == 4);    // some Hamiltonian path only needs turns > 0
  CHECK(at90 == 2);   // square corners never turn obtusely
  CHECK(at179 == 2);  // nothing is straighter than 135 degrees here

  CHECK(rows[0].solver_len == at0);
  CHECK(rows[1].solver_len == at90);
  CHECK(rows[2].solver_len == at179);
  for (const auto& r : rows) CHECK(r.pass);

  // lengths along the grid never increase
  CHECK(rows[0].solver_len >= rows[1].solver_len);
  CHECK(rows[1].solver_len >= rows[2].solver_len);
}

TEST_CASE("alpha sweep argument checks") {
  const Configuration c = generate_random(4, 1);
  CHECK_THROWS_AS(alpha_sweep(c, {90.0, 30.0}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_sweep(c, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_sweep(c, {180.0}), std::invalid_argument);
}

TEST_CASE("csv report format") {
  ExperimentRecord rec;
  rec.experiment_id = "demo";
  rec.generator = "random";
  rec.n = 5;
  rec.seed = 7;
  rec.has_seed = true;
  rec.lower_bound = 3;
  rec.upper_bound = 9;
  rec.es_len = 3;
  rec.solver_mode = "exact";
  rec.solver_len = 4;
  rec.status = "PROVED_OPTIMAL";
  rec.nodes = 123;
  rec.wall_ms = 1.5;
  rec.pass = true;

  const std::string csv = records_to_csv({rec});
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header ==
        "experiment_id,generator,n,m,seed,alpha_deg,lower_bound,upper_bound,es_len,"
        "solver_mode,solver_len,status,nodes,wall_ms,pass");
  CHECK(row == "demo,random,5,,7,90,3,9,3,exact,4,PROVED_OPTIMAL,123,1.500,1");
}

TEST_CASE("suite: parse, run, determinism") {
  const std::string doc = R"({
    "name": "mini",
    "experiments": [
      {"id": "fix-line", "kind": "fixture", "fixture": "collinear", "n": 5, "expected_len": 5},
      {"id": "oracle-tiny", "kind": "oracle", "n": 4, "seeds": [1, 2, 3]},
      {"id": "low-tiny", "kind": "lower", "generator": "random", "n": 10, "seeds": [4, 5]},
      {"id": "up-m2", "kind": "upper", "m": 2},
      {"id": "sweep-sq", "kind": "sweep", "generator": "grid", "n": 2,
       "alphas_deg": [0, 90, 179]}
    ]
  })";
  const SuiteSpec spec = suite_from_json(doc);
  CHECK(spec.name == "mini");
  REQUIRE(spec.experiments.size() == 5);

  const SuiteResult first = run_suite(spec, 1);
  CHECK(first.all_pass);
  CHECK(first.records.size() == 3 + 2 + 1 + 3 + 1);
  CHECK(first.csv.find("fix-line") != std::string::npos);

  // deterministic modulo the timing column, and stable under parallelism
  const SuiteResult again = run_suite(spec, 4);
  CHECK(strip_timing(first.csv) == strip_timing(again.csv));
  CHECK(first.summary.find("fail") == std::string::npos);

  // records come out sorted by their deterministic key
  auto sorted = first.records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     if (a.experiment_id != b.experiment_id)
                       return a.experiment_id < b.experiment_id;
                     if (a.seed != b.seed) return a.seed < b.seed;
                     return a.alpha_deg < b.alpha_deg;
                   });
  for (std::size_t i = 0; i < sorted.size(); ++i)
    CHECK(sorted[i].experiment_id == first.records[i].experiment_id);
}

TEST_CASE("suite: a wrong expectation produces a failing report") {
  SuiteSpec spec;
  spec.name = "broken-fixture";
  SuiteExperiment e;
  e.id = "bad";
  e.kind = "fixture";
  e.fixture = "square";
  e.expected_len = 3;  // actual optimum is 2
  spec.experiments.push_back(e);

  const SuiteResult r = run_suite(spec);
  CHECK_FALSE(r.all_pass);
  REQUIRE(r.records.size() == 1);
  CHECK_FALSE(r.records[0].pass);
  CHECK(r.csv.find(",0\n") != std::string::npos);
}

TEST_CASE("suite: malformed documents are rejected") {
  CHECK_THROWS(suite_from_json("{"));
  CHECK_THROWS(suite_from_json(R"({"experiments": [{"id": "x", "kind": "nope"}]})"));
  CHECK_THROWS(suite_from_json(R"({"experiments": [{"id": "x", "kind": "oracle", "n": 0}]})"));
}

TEST_CASE("default suite passes end to end") {
  const SuiteResult r = run_suite(default_suite(), 2);
  CHECK(r.all_pass);
  CHECK(r.records.size() > 50);
  for (const auto& rec : r.records) {
    CAPTURE(rec.experiment_id);
    CAPTURE(rec.seed);
    CHECK(rec.pass);
  }
}
