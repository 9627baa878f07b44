#include "normgeom/constants.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace normgeom {

PAngleCosine cos_ang_p(const Space& space, const Vector& u, const Vector& v) {
  const double nu = space.norm(u);
  const double nv = space.norm(v);
  if (!(nu > 0.0) || !(nv > 0.0)) throw SpecError("cos_ang_p: both vectors must be nonzero");
  const double nd = space.norm(u - v);
  return {(nu * nu + nv * nv - nd * nd) / (2.0 * nu * nv)};
}

PairObjective plus_minus_objective(const Space& space, double (*f)(double, double)) {
  return {[&space, f](const Vector& x, const Vector& y) { return f(space.norm(x + y), space.norm(x - y)); },
          PairSymmetry::full_sign};
}

namespace {

ConstantEstimate exact(const Space& space, double value, SearchMode mode, const SearchConfig& cfg) {
  ConstantEstimate est;
  const Vector e = sphere_point(space, std::vector<double>(static_cast<std::size_t>(space.dim()), 1.0));
  est.value = value;
  est.witness = {e, e};
  est.mode = mode;
  est.converged = true;
  est.config = cfg;
  return est;
}

// |x + t y| and |x - t y| based objectives, symmetric under both sign flips.
template <class F>
PairObjective scaled_objective(const Space& space, double t, F f) {
  return {[&space, t, f](const Vector& x, const Vector& y) {
            const Vector ty = t * y;
            return f(space.norm(x + ty), space.norm(x - ty));
          },
          PairSymmetry::full_sign};
}

}  // namespace

ConstantEstimate sp_constant(const Space& space, const SearchConfig& cfg) {
  return maximize_pair(space, plus_minus_objective(space, objective::sp), cfg, true);
}

ConstantEstimate james(const Space& space, const SearchConfig& cfg) {
  return maximize_pair(space, plus_minus_objective(space, objective::james), cfg);
}

ConstantEstimate cnj_prime(const Space& space, const SearchConfig& cfg) {
  return maximize_pair(space, plus_minus_objective(space, objective::cnj_prime), cfg);
}

ConstantEstimate schaffer(const Space& space, const SearchConfig& cfg) {
  return minimize_pair(space, plus_minus_objective(space, objective::schaffer), cfg);
}

ConstantEstimate gamma(const Space& space, double t, const SearchConfig& cfg) {
  if (!(t >= 0.0 && t <= 1.0)) throw SpecError("gamma: t must lie in [0, 1]");
  if (t == 0.0) {
    auto est = exact(space, 1.0, SearchMode::sup, cfg);
    est.parameter = 0.0;
    return est;
  }
  auto est = maximize_pair(space, scaled_objective(space, t, [](double a, double b) { return (a * a + b * b) / 2.0; }),
                           cfg);
  est.parameter = t;
  return est;
}

ConstantEstimate cnj(const Space& space, const SearchConfig& cfg) {
  PairFamily family;
  family.fn = [&space](const Vector& x, const Vector& y, double t) {
    const Vector ty = t * y;
    const double a = space.norm(x + ty);
    const double b = space.norm(x - ty);
    return (a * a + b * b) / (2.0 * (1.0 + t * t));
  };
  family.symmetry = PairSymmetry::full_sign;
  family.points = kTGridPoints;
  return maximize_pair_family(space, family, cfg);
}

ConstantEstimate zbaganu(const Space& space, const SearchConfig& cfg) {
  PairFamily family;
  family.fn = [&space](const Vector& u, const Vector& v, double t) {
    const Vector tv = t * v;
    return space.norm(u + tv) * space.norm(u - tv) / (1.0 + t * t);
  };
  family.symmetry = PairSymmetry::full_sign;
  family.points = kTGridPoints;
  return maximize_pair_family(space, family, cfg);
}

ConstantEstimate delta(const Space& space, double eps, const SearchConfig& cfg, DeltaMode mode) {
  if (!(eps >= 0.0 && eps <= 2.0)) throw SpecError("delta: eps must lie in [0, 2]");
  if (eps == 0.0) {
    auto est = exact(space, 0.0, SearchMode::inf, cfg);
    est.parameter = 0.0;
    return est;
  }
  const auto midpoint_depth = [&space](const Vector& x, const Vector& y) { return 1.0 - space.norm(x + y) / 2.0; };
  ConstantEstimate est;
  if (mode == DeltaMode::eq) {
    est = minimize_on_distance_level(space, midpoint_depth, eps, cfg);
  } else {
    // The 1e-10 slack admits y = -x at eps = 2 despite rounding in |2x|.
    const double floor = eps - 1e-10;
    PairObjective constrained{[&space, floor, midpoint_depth](const Vector& x, const Vector& y) {
                                if (space.norm(x - y) < floor) return std::numeric_limits<double>::infinity();
                                return midpoint_depth(x, y);
                              },
                              PairSymmetry::joint_sign};
    est = minimize_pair(space, constrained, cfg);
    // The barrier search stops short of the active constraint |x - y| = eps;
    // slide along it from the witness. Skipped when the witness spans no plane.
    const Vector& x = est.witness[0];
    const Vector& y = est.witness[1];
    const bool spans = space.dim() == 2 || (y - y.dot(x) / x.squaredNorm() * x).norm() > 1e-9;
    if (cfg.refine_iters > 0 && spans) {
      const auto level = polish_on_distance_level(space, midpoint_depth, eps, cfg, x, y);
      est.evaluations += level.evaluations;
      if (level.value < est.value) {
        est.value = level.value;
        est.witness = level.witness;
        est.converged = level.converged;
      }
    }
  }
  est.parameter = eps;
  return est;
}

ConstantEstimate eps0(const Space& space, const SearchConfig& cfg) {
  ConstantEstimate at_two = delta(space, 2.0, cfg);
  long long evals = at_two.evaluations;
  if (at_two.value <= kDeltaZero) {
    at_two.value = 2.0;
    at_two.mode = SearchMode::sup;
    return at_two;
  }

  double lo = 0.0, hi = 2.0;
  ConstantEstimate best = delta(space, 0.0, cfg);
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    ConstantEstimate d = delta(space, mid, cfg);
    evals += d.evaluations;
    if (d.value <= kDeltaZero) {
      lo = mid;
      best = std::move(d);
    } else {
      hi = mid;
    }
  }
  best.value = lo;
  best.parameter = lo;
  best.mode = SearchMode::sup;
  best.evaluations = evals;
  return best;
}

ConstantEstimate rho(const Space& space, double t, const SearchConfig& cfg) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw SpecError("rho: t must be a finite nonnegative real");
  if (t == 0.0) {
    auto est = exact(space, 0.0, SearchMode::sup, cfg);
    est.parameter = 0.0;
    return est;
  }
  auto est = maximize_pair(space, scaled_objective(space, t, [](double a, double b) { return (a + b) / 2.0 - 1.0; }),
                           cfg);
  est.parameter = t;
  return est;
}

std::pair<ConstantEstimate, ConstantEstimate> t_and_T(const Space& space, const SearchConfig& cfg) {
  const PairObjective f = plus_minus_objective(space, objective::geometric_mean);
  return {infsup_pair(space, f, cfg), maximize_pair(space, f, cfg)};
}

ConstantEstimate sqrt2_pair_residual(const Space& space, const SearchConfig& cfg) {
  return minimize_pair(space, plus_minus_objective(space, [](double a, double b) {
                         const double r = std::numbers::sqrt2;
                         return (a - r) * (a - r) + (b - r) * (b - r);
                       }),
                       cfg);
}

}  // namespace normgeom
