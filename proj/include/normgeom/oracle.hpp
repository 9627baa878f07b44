#pragma once

#include "normgeom/norm.hpp"
#include "normgeom/sphere_search.hpp"

#include <functional>
#include <string>
#include <vector>

namespace normgeom {

/// Brute-force extremum over a full angular grid of a 2D unit sphere.
struct OracleResult {
  double value = 0.0;
  int grid_size = 0;
  double theta = 0.0;  // angle of x
  double phi = 0.0;    // angle of y
};

/// Plain scan of f over the grid_size x grid_size angle pairs in [0, 2pi)^2,
/// skipping pairs with |x - y| < eta or |x + y| < eta. Sphere points are
/// (cos, sin) / gauge, computed here without the search module.
/// Throws SpecError for dim != 2 or grid_size < 100, or when every pair is skipped.
OracleResult oracle_pair_extremum(const Space& space, const PairFunction& f, SearchMode mode, int grid_size,
                                  double eta);

/// Objective of a = |x + y| and b = |x - y| for the fused scan.
struct PlusMinusObjective {
  std::string name;
  std::function<double(double, double)> f;
  SearchMode mode = SearchMode::sup;
  bool exclude_degenerate = false;  // skip pairs with a < eta or b < eta
};

/// Same scan as oracle_pair_extremum, evaluating a and b once per pair and
/// feeding every objective. Results follow the order of `objectives`.
std::vector<OracleResult> oracle_plus_minus_extrema(const Space& space, const std::vector<PlusMinusObjective>& objectives,
                                                    int grid_size, double eta);

/// The five pair constants cross-checked against the optimizer:
/// sp, james, cnj_prime, schaffer and T.
std::vector<PlusMinusObjective> standard_oracle_objectives();

}  // namespace normgeom
