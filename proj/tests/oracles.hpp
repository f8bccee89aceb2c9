#pragma once

// Test-only reference implementations. Everything here is deliberately
// naive and independent of the library's code paths: integer/double
// arithmetic instead of rationals, full enumeration instead of search.
// Only use these on inputs where double arithmetic is exact or the margin
// to any decision boundary is large.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracles {

struct P {
  double x;
  double y;
};

// Longest strictly monotone subsequence length by enumerating all 2^L
// subsequences. L <= 20.
inline int lis_brute(const std::vector<double>& v, bool increasing) {
  const int n = static_cast<int>(v.size());
  if (n > 20) throw std::runtime_error("lis_brute limit");
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double prev = 0.0;
    bool first = true, ok = true;
    int len = 0;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      if (!first) ok = increasing ? (v[i] > prev) : (v[i] < prev);
      prev = v[i];
      first = false;
      ++len;
    }
    if (ok) best = std::max(best, len);
  }
  return best;
}

inline int monotone_brute(const std::vector<double>& v) {
  return std::max(lis_brute(v, true), lis_brute(v, false));
}

// Turn test on small-integer (or otherwise double-exact) coordinates: the
// dot product is computed exactly, so the sign decision is exact too.
inline bool turn_obtuse_int(const P& prev, const P& cur, const P& next) {
  const double d = (prev.x - cur.x) * (next.x - cur.x) + (prev.y - cur.y) * (next.y - cur.y);
  return d < 0.0;
}

// Angle-interval test for general alpha, with a margin check: trips if the
// input sits suspiciously close to the boundary instead of silently
// classifying it.
inline bool turn_admissible_alpha(const P& prev, const P& cur, const P& next,
                                  double alpha_rad, double margin = 1e-9) {
  const double ux = prev.x - cur.x, uy = prev.y - cur.y;
  const double vx = next.x - cur.x, vy = next.y - cur.y;
  const double c = (ux * vx + uy * vy) / (std::hypot(ux, uy) * std::hypot(vx, vy));
  const double angle = std::acos(std::clamp(c, -1.0, 1.0));
  if (std::fabs(angle - alpha_rad) < margin)
    throw std::runtime_error("oracle input too close to the angle boundary");
  return angle > alpha_rad;
}

// Longest admissible trajectory by exhaustive extension, n <= 10. The
// admissibility callback decides each interior turn.
template <typename Admissible>
int longest_trajectory_brute(const std::vector<P>& pts, Admissible admissible) {
  const int n = static_cast<int>(pts.size());
  if (n > 10) throw std::runtime_error("longest_trajectory_brute limit");
  std::vector<int> path;
  std::vector<bool> used(n, false);
  int best = 0;
  auto dfs = [&](auto&& self) -> void {
    best = std::max(best, static_cast<int>(path.size()));
    for (int k = 0; k < n; ++k) {
      if (used[k]) continue;
      if (path.size() >= 2) {
        const int a = path[path.size() - 2], b = path.back();
        if (!admissible(pts[a], pts[b], pts[k])) continue;
      }
      used[k] = true;
      path.push_back(k);
      self(self);
      path.pop_back();
      used[k] = false;
    }
  };
  dfs(dfs);
  return best;
}

inline int longest_obtuse_trajectory_brute(const std::vector<P>& pts) {
  return longest_trajectory_brute(pts, [](const P& a, const P& b, const P& c) {
    return turn_obtuse_int(a, b, c);
  });
}

inline long long isqrt_brute(long long v) {
  long long k = 0;
  while ((k + 1) * (k + 1) <= v) ++k;
  return k;
}

}  // namespace oracles
