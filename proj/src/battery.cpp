#include "normgeom/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace normgeom {

namespace {

// Rounds to 1e-6 so the spec text stays short and parses back exactly.
double tidy(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

std::vector<NormSpec> polygon_battery(std::uint64_t seed, int count) {
  if (count < 0) throw SpecError("battery: count must be nonnegative");
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng()); };

  std::vector<NormSpec> out;
  while (static_cast<int>(out.size()) < count) {
    const int k = 3 + static_cast<int>(rng() % 6);
    std::vector<Point2> pts;
    for (int i = 0; i < k; ++i) {
      const double a = uniform(0.0, std::numbers::pi);
      const double r = uniform(0.5, 1.5);
      pts.push_back({tidy(r * std::cos(a)), tidy(r * std::sin(a))});
    }
    const auto hull = symmetric_hull(pts);
    if (hull.size() < 6 || hull.size() > 16) continue;
    // Keep one vertex of each antipodal pair; the hull is symmetric.
    std::vector<Point2> half(hull.begin(), hull.begin() + static_cast<std::ptrdiff_t>(hull.size() / 2));
    NormSpec spec = NormSpec::poly_vertices(half);
    try {
      validate_spec(spec);
    } catch (const SpecError&) {
      continue;
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<NormSpec> lp_battery() {
  std::vector<NormSpec> out;
  for (double p : {1.0, 1.2, 1.5, 2.0, 3.0, 4.0}) out.push_back(NormSpec::lp(p, 2));
  out.push_back(NormSpec::linf(2));
  return out;
}

}  // namespace normgeom
