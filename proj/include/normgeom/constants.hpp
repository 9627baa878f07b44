#pragma once

#include "normgeom/sphere_search.hpp"

#include <utility>

namespace normgeom {

/// Cosine of the Pythagorean angle between two nonzero vectors.
struct PAngleCosine {
  double value = 0.0;
};

/// (|u|^2 + |v|^2 - |u - v|^2) / (2 |u| |v|). Throws SpecError for a zero vector.
PAngleCosine cos_ang_p(const Space& space, const Vector& u, const Vector& v);

// Pair objectives written in terms of a = |x + y| and b = |x - y|. They are
// shared with the oracle so both routes evaluate the same formula.
namespace objective {
inline double sp(double a, double b) { return (a * a + b * b - 4.0) / (2.0 * a * b); }
inline double james(double a, double b) { return a < b ? a : b; }
inline double schaffer(double a, double b) { return a > b ? a : b; }
inline double cnj_prime(double a, double b) { return (a * a + b * b) / 4.0; }
inline double geometric_mean(double a, double b) { return std::sqrt(a * b); }
}  // namespace objective

/// Wraps f(|x + y|, |x - y|) as a pair objective with full sign symmetry.
PairObjective plus_minus_objective(const Space& space, double (*f)(double, double));

/// sup of cos ang_P(x + y, x - y) over unit pairs with x != +-y.
ConstantEstimate sp_constant(const Space& space, const SearchConfig& cfg);

ConstantEstimate james(const Space& space, const SearchConfig& cfg);
ConstantEstimate cnj_prime(const Space& space, const SearchConfig& cfg);

/// sup over t in [0, 1] of gamma(t) / (1 + t^2); `parameter` is the maximizing t.
ConstantEstimate cnj(const Space& space, const SearchConfig& cfg);

/// sup of (|x + t y|^2 + |x - t y|^2) / 2; exactly 1 at t = 0.
ConstantEstimate gamma(const Space& space, double t, const SearchConfig& cfg);

/// sup over unit u, v and t in [0, 1] of |u + t v| |u - t v| / (1 + t^2).
ConstantEstimate zbaganu(const Space& space, const SearchConfig& cfg);

enum class DeltaMode { eq, geq };

/// Modulus of convexity: inf of 1 - |x + y| / 2 over unit pairs with
/// |x - y| >= eps (geq) or |x - y| = eps (eq). Zero at eps = 0.
ConstantEstimate delta(const Space& space, double eps, const SearchConfig& cfg, DeltaMode mode = DeltaMode::geq);

/// sup{eps : delta(eps) = 0} by bisection with threshold delta <= 1e-7.
ConstantEstimate eps0(const Space& space, const SearchConfig& cfg);

/// Modulus of smoothness: sup of (|x + t y| + |x - t y|) / 2 - 1.
ConstantEstimate rho(const Space& space, double t, const SearchConfig& cfg);

/// inf of max{|x + y|, |x - y|}.
ConstantEstimate schaffer(const Space& space, const SearchConfig& cfg);

/// (inf_x sup_y, sup_{x,y}) of sqrt(|x + y| |x - y|).
std::pair<ConstantEstimate, ConstantEstimate> t_and_T(const Space& space, const SearchConfig& cfg);

/// inf of (|x + y| - sqrt2)^2 + (|x - y| - sqrt2)^2; zero on every space.
ConstantEstimate sqrt2_pair_residual(const Space& space, const SearchConfig& cfg);

/// Threshold used by eps0 to decide delta(eps) = 0.
inline constexpr double kDeltaZero = 1e-7;
/// Number of uniform t samples on [0, 1] for the t-swept constants.
inline constexpr int kTGridPoints = 101;

}  // namespace normgeom
