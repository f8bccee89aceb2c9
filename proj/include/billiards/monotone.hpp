#pragma once

#include "billiards/configuration.hpp"
#include "billiards/solver.hpp"

#include <string>
#include <vector>

namespace billiards {

enum class MonotoneDirection { Increasing, Decreasing };

// How a trajectory was extracted: rotate so both coordinate lists are
// pairwise distinct, sort by x, take a longest monotone run of y values.
// `chain_positions` indexes into `sorted_by_x`.
struct MonotoneWitness {
  Rational rotation_t;
  std::vector<int> sorted_by_x;      // point indices, ascending rotated x
  std::vector<int> chain_positions;  // positions of the extracted chain
  MonotoneDirection direction = MonotoneDirection::Increasing;
};

// First t in 1/997, 1/998, 1/999, ... whose rotation leaves all x and all y
// coordinates pairwise distinct. Terminates for any set of distinct points:
// only finitely many directions collapse a coordinate pair.
Rational general_position_rotation(const Configuration& config);

struct MonotoneRun {
  std::vector<int> indices;  // positions into the input sequence
  MonotoneDirection direction = MonotoneDirection::Increasing;
};

// Longest strictly increasing and strictly decreasing runs via patience
// sorting with predecessor links, O(L log L). Returns the longer of the
// two; a tie goes to the increasing run. Values must be pairwise distinct.
MonotoneRun longest_monotone_subsequence(const std::vector<Rational>& values);

std::vector<int> longest_increasing_run(const std::vector<Rational>& values);
std::vector<int> longest_decreasing_run(const std::vector<Rational>& values);

struct EsTrajectory {
  Trajectory trajectory;  // point indices into the original configuration
  MonotoneWitness witness;
};

// Constructive lower bound: the returned trajectory is admissible under the
// exact right-angle policy and has length >= isqrt(n-1) + 1. Both
// coordinates are strictly monotone along the chain, which forces every
// interior dot product negative; the result is reported in the original,
// unrotated coordinates.
EsTrajectory es_trajectory(const Configuration& config);

// Trajectory document: config_ref, indices, length, policy (alpha in
// degrees as a string), witness (t, direction).
std::string trajectory_to_json(const EsTrajectory& result,
                               const Configuration& config);

}  // namespace billiards
