#include "normgeom/norm.hpp"

#include <algorithm>
#include <cmath>

namespace normgeom {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

// Andrew's monotone chain on V ∪ -V; collinear points are dropped.
std::vector<Point2> symmetric_hull(const std::vector<Point2>& vertices) {
  std::vector<Point2> pts;
  pts.reserve(2 * vertices.size());
  for (const auto& v : vertices) {
    pts.push_back(v);
    pts.push_back({-v[0], -v[1]});
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<std::vector<double>> facet_functionals(const std::vector<Point2>& vertices) {
  const auto hull = symmetric_hull(vertices);
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    // Outward normal of the CCW edge a -> b, scaled so <f, a> = <f, b> = 1.
    const double nx = b[1] - a[1];
    const double ny = a[0] - b[0];
    const double level = nx * a[0] + ny * a[1];
    if (!(level > 0.0)) continue;
    const std::vector<double> f{nx / level, ny / level};
    const bool opposite_known = std::any_of(out.begin(), out.end(), [&](const std::vector<double>& g) {
      return std::abs(g[0] + f[0]) <= 1e-12 * (1.0 + std::abs(f[0])) &&
             std::abs(g[1] + f[1]) <= 1e-12 * (1.0 + std::abs(f[1]));
    });
    if (!opposite_known) out.push_back(f);
  }
  return out;
}

}  // namespace normgeom
