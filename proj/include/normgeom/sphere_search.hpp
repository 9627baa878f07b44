#pragma once

#include "normgeom/norm.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace normgeom {

/// Deterministic global-search parameters.
struct SearchConfig {
  int grid_per_dim = 720;   // angles per point in 2D, direction samples per coordinate in dim >= 3
  int refine_iters = 200;   // polish sweeps per start
  int multistart = 16;      // grid cells polished
  double tol = 1e-9;
  double eta = 1e-6;        // pairs with |x-y| < eta or |x+y| < eta are skipped when exclusion is on
  std::uint64_t seed = 42;

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

/// 720 angles in 2D, 24 direction samples per coordinate otherwise.
SearchConfig default_config(int dim);

/// Throws SpecError unless grid_per_dim >= 8, 0 < tol < 1, 0 < eta < 1,
/// refine_iters >= 0 and multistart >= 1.
void validate_config(const SearchConfig& cfg);

enum class SearchMode { sup, inf, infsup };

std::string to_string(SearchMode mode);

/// Sign symmetries an objective may declare. They only shrink the coarse grid;
/// results are identical to the full scan.
///   joint_sign: f(-x, -y) = f(x, y)
///   full_sign:  additionally f(x, -y) = f(x, y)
enum class PairSymmetry { none, joint_sign, full_sign };

using PairFunction = std::function<double(const Vector&, const Vector&)>;

struct PairObjective {
  PairFunction fn;
  PairSymmetry symmetry = PairSymmetry::none;

  PairObjective() = default;
  PairObjective(PairFunction f, PairSymmetry s = PairSymmetry::none) : fn(std::move(f)), symmetry(s) {}
  template <class F, class = std::enable_if_t<std::is_invocable_r_v<double, F, const Vector&, const Vector&>>>
  PairObjective(F f) : fn(std::move(f)) {}
};

/// Objective family f(x, y; s) over a scalar parameter s in [lo, hi], sampled on
/// `points` uniform values before the joint polish.
struct PairFamily {
  std::function<double(const Vector&, const Vector&, double)> fn;
  PairSymmetry symmetry = PairSymmetry::none;
  double lo = 0.0;
  double hi = 1.0;
  int points = 101;
};

/// Result of one extremum search.
struct ConstantEstimate {
  double value = 0.0;
  std::vector<Vector> witness;        // unit vectors x (and y)
  std::optional<double> parameter;    // auxiliary scalar (t or eps) when applicable
  SearchMode mode = SearchMode::sup;
  bool converged = false;
  long long evaluations = 0;
  bool near_excluded = false;         // best pair within 10 * eta of x = +-y
  SearchConfig config;
};

/// d / |d| for the direction encoded by `params`: a single angle in 2D, or
/// `dim` coordinates. Throws SpecError for a zero direction or wrong arity.
Vector sphere_point(const Space& space, std::span<const double> params);
Vector sphere_point(const Space& space, double angle);

ConstantEstimate maximize_pair(const Space& space, const PairObjective& objective, const SearchConfig& cfg,
                               bool exclude_degenerate = false);
ConstantEstimate minimize_pair(const Space& space, const PairObjective& objective, const SearchConfig& cfg,
                               bool exclude_degenerate = false);

/// inf over x of sup over y. Both levels scan the grid; during the outer
/// search the inner level polishes only its best cell, and the final x gets
/// up to 4 inner starts.
ConstantEstimate infsup_pair(const Space& space, const PairObjective& objective, const SearchConfig& cfg);

/// sup over (x, y, s); the estimate's `parameter` holds the maximizing s.
/// The coarse angular grid uses grid_per_dim / 4 points (at least 8).
ConstantEstimate maximize_pair_family(const Space& space, const PairFamily& family, const SearchConfig& cfg);

/// For each first point x on the coarse grid, the second points on the two
/// arcs from x to -x with |x - y| = target, found by bisection; `fn` is
/// minimized over those pairs and the first point is then polished.
ConstantEstimate minimize_on_distance_level(const Space& space, const PairFunction& fn, double target,
                                            const SearchConfig& cfg);

/// Local form of minimize_on_distance_level started from the pair (x, y):
/// only the first point moves, and in dim >= 3 the second point stays in the
/// plane spanned by the first point and y. Throws SpecError when y is
/// parallel to x in dim >= 3.
ConstantEstimate polish_on_distance_level(const Space& space, const PairFunction& fn, double target,
                                          const SearchConfig& cfg, const Vector& x, const Vector& y);

}  // namespace normgeom
