#include "normgeom/sphere_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <random>

namespace normgeom {

SearchConfig default_config(int dim) {
  SearchConfig cfg;
  cfg.grid_per_dim = dim == 2 ? 720 : 24;
  return cfg;
}

void validate_config(const SearchConfig& cfg) {
  if (cfg.grid_per_dim < 8) throw SpecError("search config: grid_per_dim must be >= 8");
  if (cfg.refine_iters < 0) throw SpecError("search config: refine_iters must be >= 0");
  if (cfg.multistart < 1) throw SpecError("search config: multistart must be >= 1");
  if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) throw SpecError("search config: tol must lie in (0, 1)");
  if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) throw SpecError("search config: eta must lie in (0, 1)");
}

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::sup: return "sup";
    case SearchMode::inf: return "inf";
    case SearchMode::infsup: return "infsup";
  }
  return "unknown";
}

Vector sphere_point(const Space& space, std::span<const double> params) {
  const int n = space.dim();
  Vector d(n);
  if (n == 2 && params.size() == 1) {
    d << std::cos(params[0]), std::sin(params[0]);
  } else if (static_cast<int>(params.size()) == n) {
    for (int i = 0; i < n; ++i) d[i] = params[static_cast<std::size_t>(i)];
  } else {
    throw SpecError("sphere_point: expected " + std::to_string(n) + " direction coordinates" +
                    (n == 2 ? " or a single angle" : ""));
  }
  if (!d.allFinite()) throw SpecError("sphere_point: non-finite direction");
  const double g = space.norm(d);
  if (!(g > 0.0)) throw SpecError("sphere_point: zero direction");
  return d / g;
}

Vector sphere_point(const Space& space, double angle) {
  const double a[1] = {angle};
  return sphere_point(space, std::span<const double>(a, 1));
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kGoldenIters = 24;
constexpr double kMinScale = 1e-7;
// Polished starts of the inf-sup search at the final point and in the outer
// polish; every outer evaluation runs an inner search.
constexpr int kInfsupStarts = 4;

using Params = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 2 * kMaxDim + 1, 1>;

bool lex_less(const Params& a, const Params& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

// Parameterization of S_X: one angle in 2D, a direction vector otherwise.
class Chart {
 public:
  Chart(const Space& space, int grid) : space_(space), grid_(grid), arity_(space.dim() == 2 ? 1 : space.dim()) {
    spacing_ = space.dim() == 2 ? kTwoPi / grid : 2.0 / grid;
  }

  int arity() const { return arity_; }
  double spacing() const { return spacing_; }
  bool periodic() const { return arity_ == 1; }

  // Unit vector for the given parameters; false for a zero direction.
  bool point(const double* p, Vector& out) const {
    const int n = space_.dim();
    Vector d(n);
    if (arity_ == 1) {
      d << std::cos(p[0]), std::sin(p[0]);
    } else {
      for (int i = 0; i < n; ++i) d[i] = p[i];
    }
    const double g = space_.norm(d);
    if (!(g > 0.0) || !std::isfinite(g)) return false;
    out = d / g;
    return true;
  }

  // Coarse grid, lexicographically ordered by parameters. `half` keeps one of
  // each antipodal pair (exact only for an even angle count).
  struct Sample {
    Params params;
    Vector point;
  };

  std::vector<Sample> samples(bool half) const {
    std::vector<Sample> out;
    const int n = space_.dim();
    if (arity_ == 1) {
      const int count = (half && grid_ % 2 == 0) ? grid_ / 2 : grid_;
      out.reserve(static_cast<std::size_t>(count));
      for (int i = 0; i < count; ++i) {
        Sample s;
        s.params.resize(1);
        s.params[0] = kTwoPi * i / grid_;
        point(s.params.data(), s.point);
        out.push_back(std::move(s));
      }
      return out;
    }
    // Integer lattice points on the surface of [0, grid]^n.
    std::vector<int> k(static_cast<std::size_t>(n), 0);
    for (;;) {
      const bool on_surface = std::any_of(k.begin(), k.end(), [&](int v) { return v == 0 || v == grid_; });
      if (on_surface) {
        Sample s;
        s.params.resize(n);
        for (int i = 0; i < n; ++i) s.params[i] = -1.0 + 2.0 * k[static_cast<std::size_t>(i)] / grid_;
        bool keep = true;
        if (half) {
          for (int i = 0; i < n; ++i) {
            if (2 * k[static_cast<std::size_t>(i)] == grid_) continue;
            keep = 2 * k[static_cast<std::size_t>(i)] > grid_;
            break;
          }
        }
        if (keep && point(s.params.data(), s.point)) out.push_back(std::move(s));
      }
      int i = n - 1;
      while (i >= 0 && k[static_cast<std::size_t>(i)] == grid_) k[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
      ++k[static_cast<std::size_t>(i)];
    }
    return out;
  }

  // Distance in units of grid spacing, with wrap-around for angles.
  double cell_distance(const double* a, const double* b) const {
    double m = 0.0;
    for (int i = 0; i < arity_; ++i) {
      double d = std::abs(a[i] - b[i]);
      if (periodic()) {
        d = std::fmod(d, kTwoPi);
        d = std::min(d, kTwoPi - d);
      }
      m = std::max(m, d / spacing_);
    }
    return m;
  }

 private:
  const Space& space_;
  int grid_;
  int arity_;
  double spacing_;
};

struct Candidate {
  double value = kNegInf;  // internal maximization value
  Params params;
};

// Strict weak order: larger value first, then lexicographically smaller params.
bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return lex_less(a.params, b.params);
}

// Keeps the best `capacity` candidates seen; the result is independent of
// insertion order because `better` is a total order on distinct params.
class TopK {
 public:
  explicit TopK(std::size_t capacity) : capacity_(capacity), heap_(better) {}

  void offer(double value, const Params& params) {
    if (!(value > kNegInf)) return;
    if (heap_.size() == capacity_) {
      const Candidate& worst = heap_.top();
      if (value < worst.value || (value == worst.value && !lex_less(params, worst.params))) return;
      heap_.pop();
    }
    heap_.push({value, params});
  }

  std::vector<Candidate> sorted() {
    std::vector<Candidate> out;
    while (!heap_.empty()) {
      out.push_back(heap_.top());
      heap_.pop();
    }
    std::sort(out.begin(), out.end(), better);
    return out;
  }

 private:
  std::size_t capacity_;
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(&better)> heap_;
};

// Drops candidates within 1.5 cells of a better one, keeping at most `count`.
template <class Distance>
std::vector<Candidate> spread(const std::vector<Candidate>& ranked, int count, Distance&& distance) {
  std::vector<Candidate> out;
  for (const auto& c : ranked) {
    if (static_cast<int>(out.size()) >= count) break;
    const bool crowded =
        std::any_of(out.begin(), out.end(), [&](const Candidate& o) { return distance(c.params, o.params) <= 1.5; });
    if (!crowded) out.push_back(c);
  }
  return out;
}

struct PolishResult {
  Candidate best;
  bool converged = false;
};

// Derivative-free maximization: golden-section line searches along the scaled
// coordinate axes (plus pairwise diagonals for small problems), along seeded
// random directions that change every sweep, and along the net displacement
// of each sweep. The random directions make the poll set dense over time, so
// ascent cones along ridges of nonsmooth objectives are eventually found. The
// bracket shrinks by 4 whenever a sweep gains less than tol.
template <class F, class Clamp>
PolishResult polish(F&& f, Candidate start, const Params& steps, const SearchConfig& cfg, std::uint64_t stream,
                    Clamp&& clamp) {
  const Eigen::Index n = start.params.size();
  std::vector<Params> dirs;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (steps[i] == 0.0) continue;
    Params u = Params::Zero(n);
    u[i] = steps[i];
    dirs.push_back(u);
  }
  if (n <= 3) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        for (double sign : {1.0, -1.0}) {
          if (steps[i] == 0.0 || steps[j] == 0.0) continue;
          Params u = Params::Zero(n);
          u[i] = steps[i];
          u[j] = sign * steps[j];
          dirs.push_back(u);
        }
  }
  // With a single active direction every other line would duplicate it.
  const bool one_dim = dirs.size() == 1;
  const std::size_t random_dirs = one_dim ? 0 : static_cast<std::size_t>(n);
  std::mt19937_64 rng(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));

  Candidate cur = start;
  auto line = [&](const Params& u) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    auto eval = [&](double s) {
      Params q = cur.params + s * u;
      clamp(q);
      return Candidate{f(q), q};
    };
    double a = -1.0, b = 1.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    Candidate fc = eval(c), fd = eval(d);
    Candidate best = better(fc, fd) ? fc : fd;
    for (int k = 0; k < kGoldenIters; ++k) {
      if (fc.value >= fd.value) {
        b = d;
        d = c;
        fd = fc;
        c = b - r * (b - a);
        fc = eval(c);
        if (fc.value > best.value) best = fc;
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + r * (b - a);
        fd = eval(d);
        if (fd.value > best.value) best = fd;
      }
    }
    if (best.value > cur.value) cur = best;
  };

  double scale = 1.0;
  PolishResult out;
  for (int it = 0; it < cfg.refine_iters; ++it) {
    const Candidate before = cur;
    for (const auto& u : dirs) line(scale * u);
    for (std::size_t k = 0; k < random_dirs; ++k) {
      Params u(n);
      for (Eigen::Index i = 0; i < n; ++i) u[i] = (2.0 * unit_uniform(rng()) - 1.0) * steps[i];
      if (u.cwiseAbs().maxCoeff() > 0.0) line(scale * u);
    }
    const Params moved = cur.params - before.params;
    if (!one_dim && moved.cwiseAbs().maxCoeff() > 0.0) line(moved);
    if (cur.value - before.value <= cfg.tol) scale *= 0.25;
    if (scale < kMinScale) {
      out.converged = true;
      break;
    }
  }
  out.best = cur;
  return out;
}

void no_clamp(Params&) {}

struct PairProblem {
  const Space& space;
  const SearchConfig& cfg;
  Chart chart;
  bool half_x;
  bool half_y;

  PairProblem(const Space& s, const SearchConfig& c, PairSymmetry sym)
      : space(s), cfg(c), chart(s, c.grid_per_dim),
        half_x(sym != PairSymmetry::none), half_y(sym == PairSymmetry::full_sign) {}

  int arity() const { return chart.arity(); }

  bool split(const Params& p, Vector& x, Vector& y) const {
    return chart.point(p.data(), x) && chart.point(p.data() + arity(), y);
  }

  double pair_distance(const Params& a, const Params& b) const {
    return std::max(chart.cell_distance(a.data(), b.data()), chart.cell_distance(a.data() + arity(), b.data() + arity()));
  }

  bool excluded(const Vector& x, const Vector& y) const {
    return space.norm(x - y) < cfg.eta || space.norm(x + y) < cfg.eta;
  }

  Params join(const Params& a, const Params& b) const {
    Params p(a.size() + b.size());
    p << a, b;
    return p;
  }

  Params pair_steps() const { return Params::Constant(2 * arity(), chart.spacing()); }
};

double sanitize(double v) { return std::isnan(v) ? kNegInf : v; }

// Shared driver for maximize_pair / minimize_pair; `sign` = -1 minimizes.
ConstantEstimate extremize_pair(const Space& space, const PairObjective& objective, const SearchConfig& cfg,
                                bool exclude_degenerate, double sign) {
  validate_config(cfg);
  PairProblem prob(space, cfg, objective.symmetry);
  const auto xs = prob.chart.samples(prob.half_x);
  const auto ys = prob.chart.samples(prob.half_y);

  long long evals = 0;
  TopK top(static_cast<std::size_t>(std::max(8 * cfg.multistart, 64)));
  for (const auto& sx : xs) {
    for (const auto& sy : ys) {
      if (exclude_degenerate && prob.excluded(sx.point, sy.point)) continue;
      ++evals;
      top.offer(sanitize(sign * objective.fn(sx.point, sy.point)), prob.join(sx.params, sy.params));
    }
  }
  const auto ranked = top.sorted();
  if (ranked.empty()) throw SpecError("pair search: every grid pair was excluded (eta too large?)");

  auto f = [&](const Params& p) {
    Vector x, y;
    if (!prob.split(p, x, y)) return kNegInf;
    if (exclude_degenerate && prob.excluded(x, y)) return kNegInf;
    ++evals;
    return sanitize(sign * objective.fn(x, y));
  };

  Candidate best = ranked.front();
  bool converged = false;
  if (cfg.refine_iters > 0) {
    const auto starts =
        spread(ranked, cfg.multistart, [&](const Params& a, const Params& b) { return prob.pair_distance(a, b); });
    bool first = true;
    for (std::size_t si = 0; si < starts.size(); ++si) {
      const Candidate& s = starts[si];
      const auto r = polish(f, s, prob.pair_steps(), cfg, si, no_clamp);
      if (first || better(r.best, best)) {
        best = r.best;
        converged = r.converged;
        first = false;
      }
    }
  }

  ConstantEstimate est;
  Vector x, y;
  prob.split(best.params, x, y);
  est.value = sign * best.value;
  est.witness = {x, y};
  est.mode = sign > 0 ? SearchMode::sup : SearchMode::inf;
  est.converged = converged;
  est.evaluations = evals;
  est.near_excluded = std::min(space.norm(x - y), space.norm(x + y)) < 10.0 * cfg.eta;
  est.config = cfg;
  return est;
}

}  // namespace

ConstantEstimate maximize_pair(const Space& space, const PairObjective& objective, const SearchConfig& cfg,
                               bool exclude_degenerate) {
  return extremize_pair(space, objective, cfg, exclude_degenerate, 1.0);
}

ConstantEstimate minimize_pair(const Space& space, const PairObjective& objective, const SearchConfig& cfg,
                               bool exclude_degenerate) {
  return extremize_pair(space, objective, cfg, exclude_degenerate, -1.0);
}

ConstantEstimate infsup_pair(const Space& space, const PairObjective& objective, const SearchConfig& cfg) {
  validate_config(cfg);
  PairProblem prob(space, cfg, objective.symmetry);
  const auto xs = prob.chart.samples(prob.half_x);
  const auto ys = prob.chart.samples(prob.half_y);
  const int arity = prob.arity();
  const Params steps = Params::Constant(arity, prob.chart.spacing());
  const int full_starts = std::min(cfg.multistart, kInfsupStarts);
  long long evals = 0;
  bool inner_converged = true;

  // sup over y for a fixed x, polishing `starts` grid cells.
  auto inner = [&](const Vector& x, int starts) {
    TopK top(static_cast<std::size_t>(std::max(8 * starts, 64)));
    for (const auto& sy : ys) {
      ++evals;
      top.offer(sanitize(objective.fn(x, sy.point)), sy.params);
    }
    const auto ranked = top.sorted();
    Candidate best = ranked.front();
    if (cfg.refine_iters == 0) return best;
    auto f = [&](const Params& p) {
      Vector y;
      if (!prob.chart.point(p.data(), y)) return kNegInf;
      ++evals;
      return sanitize(objective.fn(x, y));
    };
    const auto picked = spread(ranked, starts, [&](const Params& a, const Params& b) {
      return prob.chart.cell_distance(a.data(), b.data());
    });
    for (std::size_t si = 0; si < picked.size(); ++si) {
      const auto r = polish(f, picked[si], steps, cfg, si, no_clamp);
      if (si == 0 || better(r.best, best)) best = r.best;
      inner_converged = inner_converged && r.converged;
    }
    return best;
  };

  // The outer level minimizes, i.e. maximizes the negated inner supremum.
  // While searching, the inner level polishes only its best cell; the final
  // point gets the full inner search.
  TopK top(static_cast<std::size_t>(std::max(8 * full_starts, 64)));
  for (const auto& sx : xs) top.offer(-inner(sx.point, 1).value, sx.params);
  const auto ranked = top.sorted();

  auto outer = [&](const Params& p) {
    Vector x;
    if (!prob.chart.point(p.data(), x)) return kNegInf;
    return -inner(x, 1).value;
  };
  Candidate best = ranked.front();
  bool converged = false;
  if (cfg.refine_iters > 0) {
    const auto starts = spread(ranked, full_starts, [&](const Params& a, const Params& b) {
      return prob.chart.cell_distance(a.data(), b.data());
    });
    for (std::size_t si = 0; si < starts.size(); ++si) {
      const auto r = polish(outer, starts[si], steps, cfg, si, no_clamp);
      if (si == 0 || better(r.best, best)) {
        best = r.best;
        converged = r.converged;
      }
    }
  }

  Vector x, y;
  prob.chart.point(best.params.data(), x);
  const Candidate y_best = inner(x, full_starts);
  prob.chart.point(y_best.params.data(), y);

  ConstantEstimate est;
  est.value = objective.fn(x, y);
  est.witness = {x, y};
  est.mode = SearchMode::infsup;
  est.converged = converged && inner_converged;
  est.evaluations = evals;
  est.near_excluded = std::min(space.norm(x - y), space.norm(x + y)) < 10.0 * cfg.eta;
  est.config = cfg;
  return est;
}

ConstantEstimate maximize_pair_family(const Space& space, const PairFamily& family, const SearchConfig& cfg) {
  validate_config(cfg);
  if (family.points < 2 || !(family.hi > family.lo)) throw SpecError("pair family: need points >= 2 and lo < hi");
  // The scalar axis multiplies the coarse scan by `points`, so the angular
  // grid is a quarter as fine here; the joint polish recovers the accuracy.
  SearchConfig coarse = cfg;
  coarse.grid_per_dim = std::max(8, cfg.grid_per_dim / 4);
  PairProblem prob(space, coarse, family.symmetry);
  const auto xs = prob.chart.samples(prob.half_x);
  const auto ys = prob.chart.samples(prob.half_y);
  const int arity = prob.arity();
  const double s_step = (family.hi - family.lo) / (family.points - 1);

  long long evals = 0;
  TopK top(static_cast<std::size_t>(std::max(8 * cfg.multistart, 64)));
  for (int k = 0; k < family.points; ++k) {
    const double s = family.lo + k * s_step;
    for (const auto& sx : xs)
      for (const auto& sy : ys) {
        ++evals;
        Params p(2 * arity + 1);
        p << sx.params, sy.params, s;
        top.offer(sanitize(family.fn(sx.point, sy.point, s)), p);
      }
  }
  const auto ranked = top.sorted();

  auto clamp = [&](Params& p) { p[2 * arity] = std::clamp(p[2 * arity], family.lo, family.hi); };
  auto f = [&](const Params& p) {
    Vector x, y;
    if (!prob.split(p.head(2 * arity), x, y)) return kNegInf;
    ++evals;
    return sanitize(family.fn(x, y, p[2 * arity]));
  };

  Candidate best = ranked.front();
  bool converged = false;
  if (cfg.refine_iters > 0) {
    const auto starts = spread(ranked, cfg.multistart, [&](const Params& a, const Params& b) {
      return std::max(prob.pair_distance(a, b), std::abs(a[2 * arity] - b[2 * arity]) / s_step);
    });
    Params steps(2 * arity + 1);
    steps << prob.pair_steps(), s_step;
    bool first = true;
    for (std::size_t si = 0; si < starts.size(); ++si) {
      const Candidate& s = starts[si];
      const auto r = polish(f, s, steps, cfg, si, clamp);
      if (first || better(r.best, best)) {
        best = r.best;
        converged = r.converged;
        first = false;
      }
    }
  }

  Vector x, y;
  prob.split(best.params.head(2 * arity), x, y);
  ConstantEstimate est;
  est.value = best.value;
  est.witness = {x, y};
  est.parameter = best.params[2 * arity];
  est.mode = SearchMode::sup;
  est.converged = converged;
  est.evaluations = evals;
  est.config = cfg;
  return est;
}

namespace {

// Pairs (x, y) with |x - y| = target, y taken on a 2D section through x: in
// 2D the two arcs of the circle, otherwise the plane spanned by x and a
// direction w. Along each arc from x to -x the distance to x is nondecreasing,
// so bisection finds the level point; the far end of the bracket is returned,
// which keeps |x - y| >= target.
class LevelSet {
 public:
  LevelSet(const Space& space, const PairFunction& fn, double target, const Chart& chart)
      : space_(space), fn_(fn), target_(target), chart_(chart) {}

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    Vector x;
    Vector y;
  };

  // Minimum of fn over the level points of the first point encoded by `xp`;
  // `w` is ignored in 2D. False when no section exists.
  bool evaluate(const double* xp, const Vector& w, Best& out) {
    Vector x;
    if (!chart_.point(xp, x)) return false;
    out = {std::numeric_limits<double>::infinity(), x, x};
    auto consider = [&](const Vector& y) {
      ++evaluations;
      const double v = fn_(x, y);
      if (v < out.value || std::isnan(out.value)) {
        out.value = v;
        out.y = y;
      }
    };
    if (space_.dim() == 2) {
      for (double side : {1.0, -1.0}) {
        consider(level_point([&](double a) {
          Vector d(2);
          d << std::cos(xp[0] + side * a), std::sin(xp[0] + side * a);
          return Vector(d / space_.norm(d));
        }));
      }
      return true;
    }
    const Vector xe = x / x.norm();
    Vector u = w - w.dot(xe) * xe;
    if (u.norm() < 1e-9) return false;
    u /= u.norm();
    for (double side : {1.0, -1.0}) {
      consider(level_point([&](double a) {
        const Vector d = std::cos(a) * xe + side * std::sin(a) * u;
        return Vector(d / space_.norm(d));
      }));
    }
    return true;
  }

  long long evaluations = 0;

 private:
  template <class Path>
  Vector level_point(Path&& path) const {
    const Vector origin = path(0.0);
    double lo = 0.0, hi = std::numbers::pi;
    for (int k = 0; k < 60; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (space_.norm(origin - path(mid)) < target_)
        lo = mid;
      else
        hi = mid;
    }
    return path(hi);
  }

  const Space& space_;
  const PairFunction& fn_;
  double target_;
  const Chart& chart_;
};

ConstantEstimate level_estimate(const LevelSet::Best& b, double target, bool converged, long long evals,
                                const SearchConfig& cfg) {
  ConstantEstimate est;
  est.value = b.value;
  est.witness = {b.x, b.y};
  est.parameter = target;
  est.mode = SearchMode::inf;
  est.converged = converged;
  est.evaluations = evals;
  est.config = cfg;
  return est;
}

}  // namespace

ConstantEstimate minimize_on_distance_level(const Space& space, const PairFunction& fn, double target,
                                            const SearchConfig& cfg) {
  validate_config(cfg);
  const Chart chart(space, cfg.grid_per_dim);
  const int n = space.dim();
  const int arity = chart.arity();
  LevelSet level(space, fn, target, chart);

  // Section directions for dim >= 3; 2D needs none.
  std::vector<Vector> section_dirs;
  if (n > 2) {
    const Chart coarse(space, 4);
    for (const auto& s : coarse.samples(true)) section_dirs.push_back(s.params.head(n));
  } else {
    section_dirs.push_back(Vector::Zero(2));
  }

  // Internal maximization of -fn; the trailing parameter is the section index.
  auto f = [&](const Params& p) {
    LevelSet::Best b;
    if (!level.evaluate(p.data(), section_dirs[static_cast<std::size_t>(p[arity])], b)) return kNegInf;
    return sanitize(-b.value);
  };

  TopK top(static_cast<std::size_t>(std::max(8 * cfg.multistart, 64)));
  for (const auto& sx : chart.samples(false)) {
    for (std::size_t di = 0; di < section_dirs.size(); ++di) {
      Params p(arity + 1);
      p << sx.params, static_cast<double>(di);
      top.offer(f(p), p);
    }
  }
  const auto ranked = top.sorted();
  if (ranked.empty()) throw SpecError("distance-level search: no admissible pair");

  Candidate best = ranked.front();
  bool converged = false;
  if (cfg.refine_iters > 0) {
    const auto starts = spread(ranked, cfg.multistart, [&](const Params& a, const Params& b) {
      return a[arity] == b[arity] ? chart.cell_distance(a.data(), b.data()) : 1e9;
    });
    Params steps = Params::Constant(arity + 1, chart.spacing());
    steps[arity] = 0.0;  // section index is not polished
    bool first = true;
    for (std::size_t si = 0; si < starts.size(); ++si) {
      const auto r = polish(f, starts[si], steps, cfg, si, no_clamp);
      if (first || better(r.best, best)) {
        best = r.best;
        converged = r.converged;
        first = false;
      }
    }
  }

  LevelSet::Best b;
  level.evaluate(best.params.data(), section_dirs[static_cast<std::size_t>(best.params[arity])], b);
  return level_estimate(b, target, converged, level.evaluations, cfg);
}

ConstantEstimate polish_on_distance_level(const Space& space, const PairFunction& fn, double target,
                                          const SearchConfig& cfg, const Vector& x, const Vector& y) {
  validate_config(cfg);
  const Chart chart(space, cfg.grid_per_dim);
  const int arity = chart.arity();
  LevelSet level(space, fn, target, chart);

  Params start(arity);
  if (arity == 1)
    start[0] = std::atan2(x[1], x[0]);
  else
    start = x;
  const Vector w = y;  // spans the section together with the moving first point

  auto f = [&](const Params& p) {
    LevelSet::Best b;
    if (!level.evaluate(p.data(), w, b)) return kNegInf;
    return sanitize(-b.value);
  };
  Candidate seed{f(start), start};
  if (!(seed.value > kNegInf)) throw SpecError("distance-level polish: seed pair spans no section");

  bool converged = false;
  if (cfg.refine_iters > 0) {
    const auto r = polish(f, seed, Params::Constant(arity, chart.spacing()), cfg, 0, no_clamp);
    seed = r.best;
    converged = r.converged;
  }
  LevelSet::Best b;
  level.evaluate(seed.params.data(), w, b);
  return level_estimate(b, target, converged, level.evaluations, cfg);
}

}  // namespace normgeom
