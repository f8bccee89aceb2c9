#include "billiards/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace billiards {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg(const Configuration& config,
                       const std::optional<std::vector<int>>& trajectory) {
  validate_configuration(config);
  const int n = config.size();
  if (trajectory)
    for (int idx : *trajectory)
      if (idx < 0 || idx >= n)
        throw std::invalid_argument("trajectory does not reference this configuration");

  // y is negated on emission so the mathematical orientation survives
  // SVG's downward axis.
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (const Point& p : config.points) {
    const double x = to_double(p.x), y = -to_double(p.y);
    pts.emplace_back(x, y);
    if (first) {
      min_x = max_x = x;
      min_y = max_y = y;
      first = false;
    } else {
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }

  double span = std::max(max_x - min_x, max_y - min_y);
  if (span <= 0) span = 2.0;
  const double margin = 0.05 * span;
  const double vx = min_x - margin, vy = min_y - margin;
  const double vw = (max_x - min_x) + 2 * margin, vh = (max_y - min_y) + 2 * margin;
  const double dot_r = 0.012 * span;
  const double stroke = 0.004 * span;
  const double font = 0.035 * span;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"" +
         num(vx) + " " + num(vy) + " " + num(vw) + " " + num(vh) + "\">\n";
  svg += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
         "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">"
         "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#c62828\"/></marker></defs>\n";

  // faint circles through each metadata ring
  if (config.meta.rings) {
    std::map<int, std::pair<double, int>> norms;  // ring -> (sum of |p|, count)
    for (int i = 0; i < n; ++i) {
      const auto& p = pts[static_cast<std::size_t>(i)];
      auto& acc = norms[(*config.meta.rings)[static_cast<std::size_t>(i)]];
      acc.first += std::hypot(p.first, p.second);
      acc.second += 1;
    }
    for (const auto& [ring, acc] : norms) {
      (void)ring;
      const double r = acc.first / acc.second;
      if (r <= 0) continue;
      svg += "<circle cx=\"0\" cy=\"0\" r=\"" + num(r) +
             "\" fill=\"none\" stroke=\"#c8d0dc\" stroke-width=\"" + num(stroke * 0.75) +
             "\"/>\n";
    }
  }

  if (trajectory && trajectory->size() >= 2) {
    std::string poly;
    for (int idx : *trajectory) {
      const auto& p = pts[static_cast<std::size_t>(idx)];
      if (!poly.empty()) poly += ' ';
      poly += num(p.first) + "," + num(p.second);
    }
    svg += "<polyline points=\"" + poly +
           "\" fill=\"none\" stroke=\"#c62828\" stroke-width=\"" + num(stroke) +
           "\" marker-end=\"url(#arrow)\"/>\n";
  }

  for (const auto& p : pts)
    svg += "<circle cx=\"" + num(p.first) + "\" cy=\"" + num(p.second) + "\" r=\"" +
           num(dot_r) + "\" fill=\"#28405c\"/>\n";

  if (trajectory) {
    for (std::size_t k = 0; k < trajectory->size(); ++k) {
      const auto& p = pts[static_cast<std::size_t>((*trajectory)[k])];
      svg += "<text x=\"" + num(p.first + 1.4 * dot_r) + "\" y=\"" +
             num(p.second - 1.4 * dot_r) + "\" font-size=\"" + num(font) +
             "\" fill=\"#444\">" + std::to_string(k + 1) + "</text>\n";
    }
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace billiards
