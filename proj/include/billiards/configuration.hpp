#pragma once

#include "billiards/geometry.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace billiards {

// Provenance travels with the point set and round-trips through the file
// format unchanged. `rings` is present only for nested-ring configurations
// and holds the ring index of each point (0 = outermost ring).
struct Provenance {
  std::string generator;
  std::map<std::string, std::string> params;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<int>> rings;

  bool operator==(const Provenance& other) const = default;
};

struct Configuration {
  std::vector<Point> points;
  Provenance meta;

  int size() const { return static_cast<int>(points.size()); }
  bool operator==(const Configuration& other) const = default;
};

// Throws if points are empty or not pairwise distinct, or if ring metadata
// is misaligned.
void validate_configuration(const Configuration& config);

// A regular m-gon on the unit circle together with the ring shrink factor.
// Vertex k sits at angle 2*pi*k/m; cos/sin are computed in double precision
// and snapped to the 2^-48 dyadic grid, so the stored polygon is an exact
// rational object close to the ideal one. Every ring is this polygon scaled
// by an exact power of `scale`.
struct RingSpec {
  int m = 1;
  Rational scale;
  std::vector<Point> unit_vertices;

  static constexpr unsigned kSnapBits = 48;
  static RingSpec make(int m, const Rational& scale);
};

// Points of the m nested rings, outermost ring first, vertices in angular
// order inside a ring. Ring j has nominal radius scale^j. With no scale
// given, find_scale_factor picks one and the result is guaranteed to pass
// verify_nesting_property. trim_to > 0 keeps only the first trim_to points,
// which drops points from the innermost rings.
Configuration generate_nested_rings(int m,
                                    std::optional<Rational> scale = std::nullopt,
                                    int trim_to = 0);

// The certified ring shrink factor: a rational a in (0,1) such that the
// generated m-ring set passes the exhaustive nesting check. Search halves
// from 1/2 and returns half the first certified value, re-certified
// directly. Throws if nothing certifies before 2^-64 (cannot happen for the
// geometry at hand, but never silently falls back).
Rational find_scale_factor(int m);

struct NestingCheck {
  struct Violation {
    int x;  // point index on the strictly smaller ring
    int y;  // turn vertex
    int z;  // point index with ring radius <= radius of y
  };

  bool ok = false;
  std::vector<Violation> violations;
};

// Exhaustive exact check of the nesting property over all ordered triples
// (x, y, z) of distinct points with ring(x) strictly inside ring(y) and
// ring(z) not outside ring(y): the angle at y between yx and yz must be
// strictly acute, i.e. dot(x-y, z-y) > 0 as a rational. Requires ring
// metadata. With collect_all = false the scan stops at the first violation.
NestingCheck verify_nesting_property(const Configuration& config,
                                     bool collect_all = true);

struct BoundingBox {
  Rational x0{0};
  Rational y0{0};
  Rational x1{1};
  Rational y1{1};
};

// n distinct points on a 2^20 x 2^20 rational grid inside the box, drawn
// from splitmix64(seed). Duplicate points are rejection-resampled, so the
// same seed always yields the same configuration.
Configuration generate_random(int n, std::uint64_t seed,
                              const BoundingBox& box = BoundingBox{});

// (0,0), (1,0), ..., (n-1,0).
Configuration generate_collinear(int n);

// The k*k integer grid.
Configuration generate_grid(int k);

// Document format (version 1): {"version": 1, "points": [[x, y], ...],
// "meta": {...}} with every coordinate a string holding an exact rational
// literal. Loading parses coordinates exactly; integers may also appear as
// plain JSON numbers, but non-integer JSON numbers are rejected so no value
// ever passes through a double.
std::string configuration_to_json(const Configuration& config);
Configuration configuration_from_json(const std::string& text,
                                      const std::string& where = "configuration");

void save_configuration(const Configuration& config, const std::string& path);
Configuration load_configuration(const std::string& path);

// Stable 64-bit reference for a configuration ("fnv1a64:..." over the
// canonical document text); report and trajectory files carry it so a
// result can be matched to its input.
std::string config_ref(const Configuration& config);

}  // namespace billiards
