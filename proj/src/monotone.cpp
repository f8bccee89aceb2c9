#include "billiards/monotone.hpp"

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace billiards {

namespace {

// Rotation denominators start here; fixed so runs are reproducible.
constexpr int kRotationBase = 997;

template <typename Less>
std::vector<int> longest_run_impl(const std::vector<Rational>& values, Less less) {
  const int n = static_cast<int>(values.size());
  std::vector<int> tails;  // tails[h] = index ending the best run of length h+1
  std::vector<int> prev(static_cast<std::size_t>(n), -1);
  tails.reserve(values.size());

  for (int i = 0; i < n; ++i) {
    int lo = 0, hi = static_cast<int>(tails.size());
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (less(values[static_cast<std::size_t>(tails[static_cast<std::size_t>(mid)])],
               values[static_cast<std::size_t>(i)]))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo > 0) prev[static_cast<std::size_t>(i)] = tails[static_cast<std::size_t>(lo - 1)];
    if (lo == static_cast<int>(tails.size()))
      tails.push_back(i);
    else
      tails[static_cast<std::size_t>(lo)] = i;
  }

  std::vector<int> run;
  run.reserve(tails.size());
  for (int cur = tails.empty() ? -1 : tails.back(); cur != -1;
       cur = prev[static_cast<std::size_t>(cur)])
    run.push_back(cur);
  std::reverse(run.begin(), run.end());
  return run;
}

}  // namespace

Rational general_position_rotation(const Configuration& config) {
  validate_configuration(config);
  for (int i = 0;; ++i) {
    const Rational t(1, kRotationBase + i);
    if (coordinates_distinct(rotate_configuration(config.points, RationalRotation{t})))
      return t;
  }
}

std::vector<int> longest_increasing_run(const std::vector<Rational>& values) {
  return longest_run_impl(values, std::less<Rational>());
}

std::vector<int> longest_decreasing_run(const std::vector<Rational>& values) {
  return longest_run_impl(values, std::greater<Rational>());
}

MonotoneRun longest_monotone_subsequence(const std::vector<Rational>& values) {
  auto inc = longest_increasing_run(values);
  auto dec = longest_decreasing_run(values);
  if (inc.size() >= dec.size()) return {std::move(inc), MonotoneDirection::Increasing};
  return {std::move(dec), MonotoneDirection::Decreasing};
}

EsTrajectory es_trajectory(const Configuration& config) {
  validate_configuration(config);
  const int n = config.size();

  const Rational t = general_position_rotation(config);
  const auto rotated = rotate_configuration(config.points, RationalRotation{t});

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return rotated[static_cast<std::size_t>(a)].x < rotated[static_cast<std::size_t>(b)].x;
  });

  std::vector<Rational> ys;
  ys.reserve(order.size());
  for (int idx : order) ys.push_back(rotated[static_cast<std::size_t>(idx)].y);

  const MonotoneRun run = longest_monotone_subsequence(ys);

  EsTrajectory out;
  out.witness.rotation_t = t;
  out.witness.sorted_by_x = order;
  out.witness.chain_positions = run.indices;
  out.witness.direction = run.direction;
  out.trajectory.indices.reserve(run.indices.size());
  for (int pos : run.indices)
    out.trajectory.indices.push_back(order[static_cast<std::size_t>(pos)]);

  // Both rotated coordinates are strictly monotone along the chain, so the
  // interior dot products are strictly negative; a validation failure would
  // be a library bug, not an input problem.
  const auto v = validate_trajectory(config, out.trajectory.indices,
                                     AnglePolicy::exact_right_angle());
  if (!v.ok) throw std::logic_error("monotone chain failed validation: " + v.message);
  return out;
}

std::string trajectory_to_json(const EsTrajectory& result, const Configuration& config) {
  nlohmann::json doc;
  doc["config_ref"] = config_ref(config);
  doc["indices"] = result.trajectory.indices;
  doc["length"] = result.trajectory.length();
  doc["policy"] = "90";
  doc["witness"] = {
      {"t", rational_to_string(result.witness.rotation_t)},
      {"direction",
       result.witness.direction == MonotoneDirection::Increasing ? "increasing" : "decreasing"}};
  return doc.dump(2) + "\n";
}

}  // namespace billiards
