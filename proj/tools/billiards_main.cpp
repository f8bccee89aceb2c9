// Command-line front end: generators, solvers, the monotone lower-bound
// construction, bound verification and SVG rendering. Exit codes: 0 all
// checks passed, 1 a verification record failed, 2 usage/file/parse errors.

#include "billiards/configuration.hpp"
#include "billiards/experiments.hpp"
#include "billiards/fsio.hpp"
#include "billiards/monotone.hpp"
#include "billiards/render.hpp"
#include "billiards/solver.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace billiards;

struct GenerateOpts {
  std::string kind;
  int m = 0;
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::string scale;
  int trim_n = 0;
  std::string bbox;
  std::string out;
};

struct SolveOpts {
  std::string in;
  std::string mode = "exact";
  double alpha = 90.0;
  std::uint64_t node_budget = Budget{}.max_nodes;
  std::int64_t time_budget_ms = Budget{}.max_millis;
  int beam_width = 32;
  int restarts = 4;
  std::uint64_t seed = 0;
  std::string out;
};

struct LowerOpts {
  std::string in;
  std::string out;
};

struct VerifyOpts {
  bool lower = false;
  bool upper = false;
  std::string in;
  int m = 0;
  std::string suite;
  std::uint64_t node_budget = Budget{}.max_nodes;
  std::int64_t time_budget_ms = Budget{}.max_millis;
  int jobs = 1;
  std::string out;
};

struct SweepOpts {
  std::string in;
  std::string alphas = "0,30,60,90,120,150";
  std::uint64_t node_budget = Budget{}.max_nodes;
  std::int64_t time_budget_ms = Budget{}.max_millis;
  std::string out;
};

struct RenderOpts {
  std::string in;
  std::string trajectory;
  std::string out;
};

BoundingBox parse_bbox(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) parts.push_back(cell);
  if (parts.size() != 4)
    throw std::invalid_argument("bbox must be four comma-separated rationals: x0,y0,x1,y1");
  BoundingBox box;
  box.x0 = parse_rational(parts[0]);
  box.y0 = parse_rational(parts[1]);
  box.x1 = parse_rational(parts[2]);
  box.y1 = parse_rational(parts[3]);
  return box;
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> alphas;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument("bad alpha value: " + cell);
    alphas.push_back(v);
  }
  if (alphas.empty()) throw std::invalid_argument("empty alpha list");
  return alphas;
}

int run_generate(const GenerateOpts& o) {
  Configuration config;
  if (o.kind == "nested") {
    if (o.m < 1) throw std::invalid_argument("--kind nested requires --m >= 1");
    std::optional<Rational> scale;
    if (!o.scale.empty()) scale = parse_rational(o.scale);
    config = generate_nested_rings(o.m, scale, o.trim_n);
  } else if (o.kind == "random") {
    if (o.n < 1) throw std::invalid_argument("--kind random requires --n >= 1");
    config = o.bbox.empty() ? generate_random(o.n, o.seed)
                            : generate_random(o.n, o.seed, parse_bbox(o.bbox));
  } else if (o.kind == "collinear") {
    if (o.n < 1) throw std::invalid_argument("--kind collinear requires --n >= 1");
    config = generate_collinear(o.n);
  } else if (o.kind == "grid") {
    if (o.k < 1) throw std::invalid_argument("--kind grid requires --k >= 1");
    config = generate_grid(o.k);
  } else {
    throw std::invalid_argument("unknown kind: " + o.kind);
  }

  save_configuration(config, o.out);
  std::cout << "wrote " << o.out << ": " << config.size() << " points ("
            << config.meta.generator;
  if (const auto it = config.meta.params.find("a"); it != config.meta.params.end())
    std::cout << ", a=" << it->second;
  std::cout << ")\n";
  return 0;
}

int run_solve(const SolveOpts& o) {
  const Configuration config = load_configuration(o.in);
  const AnglePolicy policy = AnglePolicy::from_degrees(o.alpha);
  Budget budget;
  budget.max_nodes = o.node_budget;
  budget.max_millis = o.time_budget_ms;

  SolveReport report;
  if (o.mode == "exact")
    report = exact_longest(config, policy, budget);
  else if (o.mode == "beam")
    report = beam_longest(config, policy, o.beam_width, o.restarts, o.seed);
  else if (o.mode == "oracle")
    report = brute_force_longest(config, policy);
  else
    throw std::invalid_argument("unknown mode: " + o.mode);

  std::cout << report.mode << ": best_length=" << report.best_length
            << " status=" << to_string(report.status) << " nodes=" << report.nodes_expanded
            << " wall_ms=" << report.wall_ms << "\n";
  if (!o.out.empty()) atomic_write_file(o.out, report_to_json(report, config));
  return 0;
}

int run_lowerbound(const LowerOpts& o) {
  const Configuration config = load_configuration(o.in);
  const BoundPair bp = bounds(config.size());
  const EsTrajectory es = es_trajectory(config);
  std::cout << "es trajectory: length=" << es.trajectory.length()
            << " lower_bound=" << bp.lower << " n=" << config.size() << "\n";
  if (!o.out.empty()) atomic_write_file(o.out, trajectory_to_json(es, config));
  return es.trajectory.length() >= bp.lower ? 0 : 1;
}

void print_record(const ExperimentRecord& rec) {
  std::cout << (rec.pass ? "PASS " : "FAIL ") << rec.experiment_id;
  if (rec.n > 0) std::cout << " n=" << rec.n;
  if (rec.m > 0) std::cout << " m=" << rec.m;
  if (rec.has_seed) std::cout << " seed=" << rec.seed;
  if (rec.es_len >= 0) std::cout << " es_len=" << rec.es_len;
  if (rec.solver_len >= 0)
    std::cout << " len=" << rec.solver_len << " (" << rec.status << ")";
  std::cout << " bounds=[" << rec.lower_bound << "," << rec.upper_bound << "]";
  if (!rec.note.empty()) std::cout << " note: " << rec.note;
  std::cout << "\n";
}

int run_verify(const VerifyOpts& o) {
  const int modes = int(o.lower) + int(o.upper) + int(!o.suite.empty());
  if (modes != 1)
    throw CLI::ValidationError("verify", "pick exactly one of --lower, --upper, --suite");

  Budget budget;
  budget.max_nodes = o.node_budget;
  budget.max_millis = o.time_budget_ms;

  if (o.lower) {
    if (o.in.empty()) throw CLI::ValidationError("verify", "--lower requires --in");
    const ExperimentRecord rec = verify_lower_bound(load_configuration(o.in));
    print_record(rec);
    return rec.pass ? 0 : 1;
  }
  if (o.upper) {
    if (o.m < 1) throw CLI::ValidationError("verify", "--upper requires --m >= 1");
    const ExperimentRecord rec = verify_upper_bound(o.m, budget);
    print_record(rec);
    return rec.pass ? 0 : 1;
  }

  const SuiteSpec spec =
      o.suite == "default" ? default_suite() : suite_from_json(read_file(o.suite));
  const SuiteResult result = run_suite(spec, o.jobs);
  if (!o.out.empty()) atomic_write_file(o.out, result.csv);
  std::cout << result.summary << "\n";
  return result.all_pass ? 0 : 1;
}

int run_sweep(const SweepOpts& o) {
  const Configuration config = load_configuration(o.in);
  Budget budget;
  budget.max_nodes = o.node_budget;
  budget.max_millis = o.time_budget_ms;
  const auto rows = alpha_sweep(config, parse_alpha_list(o.alphas), budget);
  bool all_pass = true;
  for (const auto& rec : rows) {
    std::cout << "alpha=" << rec.alpha_deg << " len=" << rec.solver_len << " ("
              << rec.status << ")" << (rec.pass ? "" : " FAIL") << "\n";
    all_pass = all_pass && rec.pass;
  }
  if (!o.out.empty()) atomic_write_file(o.out, records_to_csv(rows));
  return all_pass ? 0 : 1;
}

int run_render(const RenderOpts& o) {
  const Configuration config = load_configuration(o.in);
  std::optional<std::vector<int>> trajectory;
  if (!o.trajectory.empty()) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_file(o.trajectory));
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error(o.trajectory + ": " + e.what());
    }
    const char* key = doc.contains("indices") ? "indices" : "best_indices";
    if (!doc.contains(key))
      throw std::runtime_error(o.trajectory + ": no \"indices\" or \"best_indices\" field");
    if (doc.contains("config_ref") && doc["config_ref"] != config_ref(config))
      throw std::runtime_error("trajectory references a different configuration");
    trajectory = doc[key].get<std::vector<int>>();
  }
  atomic_write_file(o.out, render_svg(config, trajectory));
  std::cout << "wrote " << o.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"obtuse-turn billiard trajectories: generators, solvers, verification"};
  app.require_subcommand(1);

  GenerateOpts gen;
  CLI::App* cmd_gen = app.add_subcommand("generate", "write a configuration file");
  cmd_gen->add_option("--kind", gen.kind, "nested|random|collinear|grid")->required();
  cmd_gen->add_option("--m", gen.m, "ring count (nested)");
  cmd_gen->add_option("--n", gen.n, "point count (random, collinear)");
  cmd_gen->add_option("--k", gen.k, "grid side (grid)");
  cmd_gen->add_option("--seed", gen.seed, "random seed");
  cmd_gen->add_option("--a", gen.scale, "ring scale factor as a rational; certified when omitted");
  cmd_gen->add_option("--trim-n", gen.trim_n, "keep only the first n points (nested)");
  cmd_gen->add_option("--bbox", gen.bbox, "x0,y0,x1,y1 (random)");
  cmd_gen->add_option("--out", gen.out, "output path")->required();

  SolveOpts solve;
  CLI::App* cmd_solve = app.add_subcommand("solve", "longest admissible trajectory");
  cmd_solve->add_option("--in", solve.in, "configuration file")->required();
  cmd_solve->add_option("--mode", solve.mode, "exact|beam|oracle");
  cmd_solve->add_option("--alpha", solve.alpha, "turn threshold in degrees (default 90)");
  cmd_solve->add_option("--node-budget", solve.node_budget, "search node limit");
  cmd_solve->add_option("--time-budget-ms", solve.time_budget_ms, "search time limit");
  cmd_solve->add_option("--beam-width", solve.beam_width, "beam width");
  cmd_solve->add_option("--restarts", solve.restarts, "beam restarts");
  cmd_solve->add_option("--seed", solve.seed, "beam seed");
  cmd_solve->add_option("--out", solve.out, "report output path");

  LowerOpts lower;
  CLI::App* cmd_lower = app.add_subcommand("lowerbound", "monotone-chain trajectory");
  cmd_lower->add_option("--in", lower.in, "configuration file")->required();
  cmd_lower->add_option("--out", lower.out, "trajectory output path");

  VerifyOpts verify;
  CLI::App* cmd_verify = app.add_subcommand("verify", "check the square-root bounds");
  cmd_verify->add_flag("--lower", verify.lower, "check the lower bound on --in");
  cmd_verify->add_flag("--upper", verify.upper, "check the upper bound for --m rings");
  cmd_verify->add_option("--in", verify.in, "configuration file (--lower)");
  cmd_verify->add_option("--m", verify.m, "ring count (--upper)");
  cmd_verify->add_option("--suite", verify.suite, "suite file, or \"default\"");
  cmd_verify->add_option("--node-budget", verify.node_budget, "search node limit");
  cmd_verify->add_option("--time-budget-ms", verify.time_budget_ms, "search time limit");
  cmd_verify->add_option("--jobs", verify.jobs, "parallel experiments (suite)");
  cmd_verify->add_option("--out", verify.out, "CSV report path (suite)");

  SweepOpts sweep;
  CLI::App* cmd_sweep = app.add_subcommand("sweep-alpha", "solve across an alpha grid");
  cmd_sweep->add_option("--in", sweep.in, "configuration file")->required();
  cmd_sweep->add_option("--alphas", sweep.alphas, "comma-separated degrees, ascending");
  cmd_sweep->add_option("--node-budget", sweep.node_budget, "search node limit");
  cmd_sweep->add_option("--time-budget-ms", sweep.time_budget_ms, "search time limit");
  cmd_sweep->add_option("--out", sweep.out, "CSV output path");

  RenderOpts render;
  CLI::App* cmd_render = app.add_subcommand("render", "SVG figure of a configuration");
  cmd_render->add_option("--in", render.in, "configuration file")->required();
  cmd_render->add_option("--trajectory", render.trajectory, "trajectory or report file");
  cmd_render->add_option("--out", render.out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_solve->parsed()) return run_solve(solve);
    if (cmd_lower->parsed()) return run_lowerbound(lower);
    if (cmd_verify->parsed()) return run_verify(verify);
    if (cmd_sweep->parsed()) return run_sweep(sweep);
    if (cmd_render->parsed()) return run_render(render);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
