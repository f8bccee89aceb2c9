#include "billiards/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace billiards {

AnglePolicy AnglePolicy::general(double alpha_radians) {
  if (!(alpha_radians >= 0.0) || !(alpha_radians < std::numbers::pi))
    throw std::invalid_argument("alpha must lie in [0, pi)");
  AnglePolicy p;
  p.kind = Kind::General;
  p.alpha = alpha_radians;
  return p;
}

AnglePolicy AnglePolicy::from_degrees(double degrees) {
  if (degrees == 90.0) return exact_right_angle();
  return general(degrees * std::numbers::pi / 180.0);
}

double AnglePolicy::alpha_degrees() const {
  return is_exact() ? 90.0 : alpha * 180.0 / std::numbers::pi;
}

bool turn_admissible(const Point& prev, const Point& cur, const Point& next,
                     const AnglePolicy& policy) {
  if (prev == cur || next == cur) throw std::invalid_argument("degenerate segment");

  const Rational ux = prev.x - cur.x, uy = prev.y - cur.y;
  const Rational vx = next.x - cur.x, vy = next.y - cur.y;

  if (policy.is_exact()) {
    // angle in (pi/2, pi]  <=>  cos(angle) in [-1, 0)  <=>  dot < 0
    const Rational d = ux * vx + uy * vy;
    return policy.strict_lower ? d < 0 : d <= 0;
  }

  // General alpha: compare cosines in double precision. Anything within the
  // tolerance band of the boundary is classified not admissible, so a
  // reported trajectory never leans on a borderline turn.
  const double dux = to_double(ux), duy = to_double(uy);
  const double dvx = to_double(vx), dvy = to_double(vy);
  const double cosine = (dux * dvx + duy * dvy) /
                        (std::hypot(dux, duy) * std::hypot(dvx, dvy));
  return cosine < std::cos(policy.alpha) - kGeneralAngleTolerance;
}

Rational RationalRotation::cos_value() const {
  const Rational t2 = t * t;
  return (1 - t2) / (1 + t2);
}

Rational RationalRotation::sin_value() const { return 2 * t / (1 + t * t); }

Point rotate_point(const Point& p, const RationalRotation& rotation) {
  const Rational c = rotation.cos_value(), s = rotation.sin_value();
  return Point{p.x * c - p.y * s, p.x * s + p.y * c};
}

std::vector<Point> rotate_configuration(const std::vector<Point>& points,
                                        const RationalRotation& rotation) {
  const Rational c = rotation.cos_value(), s = rotation.sin_value();
  std::vector<Point> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(Point{p.x * c - p.y * s, p.x * s + p.y * c});
  return out;
}

std::vector<Point> apply_similarity(const std::vector<Point>& points,
                                    const RationalRotation& rotation,
                                    const Rational& scale, const Rational& dx,
                                    const Rational& dy) {
  if (scale <= 0) throw std::invalid_argument("similarity scale must be positive");
  std::vector<Point> out = rotate_configuration(points, rotation);
  for (Point& p : out) {
    p.x = p.x * scale + dx;
    p.y = p.y * scale + dy;
  }
  return out;
}

bool coordinates_distinct(const std::vector<Point>& points) {
  const auto axis_distinct = [&](auto get) {
    std::vector<Rational> vals;
    vals.reserve(points.size());
    for (const Point& p : points) vals.push_back(get(p));
    std::sort(vals.begin(), vals.end());
    return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
  };
  return axis_distinct([](const Point& p) { return p.x; }) &&
         axis_distinct([](const Point& p) { return p.y; });
}

Rational squared_distance(const Point& a, const Point& b) {
  const Rational dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace billiards
