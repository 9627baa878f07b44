#include "normgeom/oracle.hpp"

#include "normgeom/constants.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace normgeom {

namespace {

void check_grid(const Space& space, int grid_size) {
  if (space.dim() != 2) throw SpecError("oracle: only 2D spaces are supported");
  if (grid_size < 100) throw SpecError("oracle: grid_size must be >= 100");
}

std::vector<Vector> circle(const Space& space, int grid_size) {
  std::vector<Vector> pts;
  pts.reserve(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    const double a = 2.0 * std::numbers::pi * i / grid_size;
    Vector d(2);
    d << std::cos(a), std::sin(a);
    pts.push_back(d / space.norm(d));
  }
  return pts;
}

// Running extremum; ties keep the first pair in scan order.
struct Tracker {
  SearchMode mode;
  double best;
  int i = -1, j = -1;

  explicit Tracker(SearchMode m)
      : mode(m), best(m == SearchMode::inf ? std::numeric_limits<double>::infinity()
                                           : -std::numeric_limits<double>::infinity()) {}

  void offer(double v, int a, int b) {
    if (std::isnan(v)) return;
    if (mode == SearchMode::inf ? v < best : v > best) {
      best = v;
      i = a;
      j = b;
    }
  }

  OracleResult result(int grid_size) const {
    if (i < 0) throw SpecError("oracle: every grid pair was excluded");
    const double step = 2.0 * std::numbers::pi / grid_size;
    return {best, grid_size, step * i, step * j};
  }
};

void check_mode(SearchMode mode) {
  if (mode == SearchMode::infsup) throw SpecError("oracle: mode must be sup or inf");
}

}  // namespace

OracleResult oracle_pair_extremum(const Space& space, const PairFunction& f, SearchMode mode, int grid_size,
                                  double eta) {
  check_grid(space, grid_size);
  check_mode(mode);
  const auto pts = circle(space, grid_size);
  Tracker tr(mode);
  for (int i = 0; i < grid_size; ++i) {
    const Vector& x = pts[static_cast<std::size_t>(i)];
    for (int j = 0; j < grid_size; ++j) {
      const Vector& y = pts[static_cast<std::size_t>(j)];
      if (space.norm(x - y) < eta || space.norm(x + y) < eta) continue;
      tr.offer(f(x, y), i, j);
    }
  }
  return tr.result(grid_size);
}

std::vector<OracleResult> oracle_plus_minus_extrema(const Space& space, const std::vector<PlusMinusObjective>& objectives,
                                                    int grid_size, double eta) {
  check_grid(space, grid_size);
  for (const auto& o : objectives) check_mode(o.mode);
  const auto pts = circle(space, grid_size);
  std::vector<Tracker> trackers;
  for (const auto& o : objectives) trackers.emplace_back(o.mode);

  Vector s(2), d(2);
  for (int i = 0; i < grid_size; ++i) {
    const Vector& x = pts[static_cast<std::size_t>(i)];
    for (int j = 0; j < grid_size; ++j) {
      const Vector& y = pts[static_cast<std::size_t>(j)];
      s = x + y;
      d = x - y;
      const double a = space.norm(s);
      const double b = space.norm(d);
      const bool degenerate = a < eta || b < eta;
      for (std::size_t k = 0; k < objectives.size(); ++k) {
        if (degenerate && objectives[k].exclude_degenerate) continue;
        trackers[k].offer(objectives[k].f(a, b), i, j);
      }
    }
  }
  std::vector<OracleResult> out;
  for (const auto& t : trackers) out.push_back(t.result(grid_size));
  return out;
}

std::vector<PlusMinusObjective> standard_oracle_objectives() {
  return {
      {"sp", objective::sp, SearchMode::sup, true},
      {"james", objective::james, SearchMode::sup, false},
      {"cnj_prime", objective::cnj_prime, SearchMode::sup, false},
      {"schaffer", objective::schaffer, SearchMode::inf, false},
      {"T", objective::geometric_mean, SearchMode::sup, false},
  };
}

}  // namespace normgeom
