#pragma once

#include "billiards/rational.hpp"

#include <vector>

namespace billiards {

struct Point {
  Rational x;
  Rational y;

  bool operator==(const Point& other) const = default;
};

// The admissible turn interval is (alpha, pi]: the lower endpoint is
// excluded, a straight continuation (angle pi) is always allowed.
//
// alpha = pi/2 is the base game and is evaluated exactly: the decision is
// the sign of one rational dot product, no floating point involved. Any
// other alpha uses double-precision cosines with a conservative tolerance
// band; anything within kGeneralAngleTolerance of the boundary counts as
// not admissible.
struct AnglePolicy {
  enum class Kind { ExactRightAngle, General };

  Kind kind = Kind::ExactRightAngle;
  double alpha = kHalfPi;  // radians; fixed at pi/2 for the exact kind
  bool strict_lower = true;

  static constexpr double kHalfPi = 1.5707963267948966;

  static AnglePolicy exact_right_angle() { return AnglePolicy{}; }
  static AnglePolicy general(double alpha_radians);

  // Degrees are the CLI currency; 90 maps to the exact policy.
  static AnglePolicy from_degrees(double degrees);

  double alpha_degrees() const;
  bool is_exact() const { return kind == Kind::ExactRightAngle; }
};

inline constexpr double kGeneralAngleTolerance = 1e-12;

// True iff the angle at `cur` between the segments cur-prev and cur-next
// lies in (alpha, pi]. The angle is the smaller of the two at the vertex,
// i.e. the one in [0, pi]. Throws std::invalid_argument("degenerate
// segment") when prev == cur or next == cur. prev == next is a legal input
// and returns false (angle 0).
bool turn_admissible(const Point& prev, const Point& cur, const Point& next,
                     const AnglePolicy& policy);

// Rotation by the angle with cos = (1-t^2)/(1+t^2), sin = 2t/(1+t^2) for a
// rational parameter t. Exact, so squared distances are preserved as
// identical rationals.
struct RationalRotation {
  Rational t;

  Rational cos_value() const;
  Rational sin_value() const;
};

Point rotate_point(const Point& p, const RationalRotation& rotation);
std::vector<Point> rotate_configuration(const std::vector<Point>& points,
                                        const RationalRotation& rotation);

// p -> scale * R(t) * p + (dx, dy). scale must be > 0.
std::vector<Point> apply_similarity(const std::vector<Point>& points,
                                    const RationalRotation& rotation,
                                    const Rational& scale, const Rational& dx,
                                    const Rational& dy);

// True iff all x coordinates are pairwise distinct and all y coordinates
// are pairwise distinct.
bool coordinates_distinct(const std::vector<Point>& points);

Rational squared_distance(const Point& a, const Point& b);

}  // namespace billiards
