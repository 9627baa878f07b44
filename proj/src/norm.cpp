#include "normgeom/norm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

namespace normgeom {

std::string to_string(NormFamily family) {
  switch (family) {
    case NormFamily::lp: return "lp";
    case NormFamily::linf: return "linf";
    case NormFamily::weighted_lp: return "wlp";
    case NormFamily::poly_functionals: return "polyf";
    case NormFamily::poly_vertices: return "polyv";
  }
  return "unknown";
}

NormSpec NormSpec::lp(double p, int dim) {
  NormSpec s;
  s.family = NormFamily::lp;
  s.p = p;
  s.dim = dim;
  return s;
}

NormSpec NormSpec::linf(int dim) {
  NormSpec s;
  s.family = NormFamily::linf;
  s.dim = dim;
  return s;
}

NormSpec NormSpec::weighted_lp(double p, std::vector<double> weights) {
  NormSpec s;
  s.family = NormFamily::weighted_lp;
  s.p = p;
  s.dim = static_cast<int>(weights.size());
  s.weights = std::move(weights);
  return s;
}

NormSpec NormSpec::poly_functionals(std::vector<std::vector<double>> functionals) {
  NormSpec s;
  s.family = NormFamily::poly_functionals;
  s.dim = functionals.empty() ? 0 : static_cast<int>(functionals.front().size());
  s.functionals = std::move(functionals);
  return s;
}

NormSpec NormSpec::poly_vertices(std::vector<Point2> vertices) {
  NormSpec s;
  s.family = NormFamily::poly_vertices;
  s.dim = 2;
  s.vertices = std::move(vertices);
  return s;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw SpecError(message);
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

using FunctionalMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

FunctionalMatrix to_matrix(const std::vector<std::vector<double>>& rows, int dim) {
  FunctionalMatrix m(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < dim; ++c) m(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
  return m;
}

// Integer exponents avoid std::pow in the inner loop.
double abs_pow(double a, double p, int int_p) {
  if (int_p > 0) {
    double r = a;
    for (int k = 1; k < int_p; ++k) r *= a;
    return r;
  }
  return std::pow(a, p);
}

Space::Gauge lp_gauge(double p, Eigen::VectorXd weights) {
  const bool weighted = weights.size() > 0;
  if (!weighted && p == 1.0) return [](const Vector& x) { return x.lpNorm<1>(); };
  if (!weighted && p == 2.0) return [](const Vector& x) { return x.norm(); };
  const int int_p = (p == std::floor(p) && p <= 8.0) ? static_cast<int>(p) : 0;
  const double inv_p = 1.0 / p;
  return [p, int_p, inv_p, weights = std::move(weights), weighted](const Vector& x) {
    const double m = x.cwiseAbs().maxCoeff();
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double term = abs_pow(std::abs(x[i]) / m, p, int_p);
      s += weighted ? weights[i] * term : term;
    }
    return m * std::pow(s, inv_p);
  };
}

Space::Gauge functional_gauge(FunctionalMatrix f) {
  return [f = std::move(f)](const Vector& x) {
    double m = 0.0;
    for (Eigen::Index r = 0; r < f.rows(); ++r) m = std::max(m, std::abs(f.row(r).dot(x)));
    return m;
  };
}

}  // namespace

void validate_spec(const NormSpec& spec) {
  require(spec.dim >= 2, "dim must be >= 2 (got " + std::to_string(spec.dim) + ")");
  require(spec.dim <= kMaxDim, "dim must be <= " + std::to_string(kMaxDim));
  switch (spec.family) {
    case NormFamily::lp:
    case NormFamily::weighted_lp:
      require(spec.p.has_value(), "exponent p is required for " + to_string(spec.family));
      require(std::isfinite(*spec.p) && *spec.p >= 1.0, "p must be a finite real >= 1 (use linf for p = infinity)");
      if (spec.family == NormFamily::weighted_lp) {
        require(static_cast<int>(spec.weights.size()) == spec.dim, "weights must have length dim");
        require(all_finite(spec.weights) &&
                    std::all_of(spec.weights.begin(), spec.weights.end(), [](double w) { return w > 0.0; }),
                "weights must be finite and strictly positive");
      }
      break;
    case NormFamily::linf:
      break;
    case NormFamily::poly_functionals: {
      require(!spec.functionals.empty(), "functionals must be nonempty");
      for (const auto& f : spec.functionals) {
        require(static_cast<int>(f.size()) == spec.dim, "every functional must have length dim");
        require(all_finite(f), "functional entries must be finite");
      }
      const FunctionalMatrix m = to_matrix(spec.functionals, spec.dim);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      lu.setThreshold(1e-12);
      require(lu.rank() == spec.dim, "functionals must span the space (otherwise the gauge is only a seminorm)");
      break;
    }
    case NormFamily::poly_vertices: {
      require(spec.dim == 2, "polyv is two-dimensional only");
      require(!spec.vertices.empty(), "vertices must be nonempty");
      for (const auto& v : spec.vertices)
        require(std::isfinite(v[0]) && std::isfinite(v[1]), "vertex coordinates must be finite");
      const auto hull = symmetric_hull(spec.vertices);
      double area = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        area += a[0] * b[1] - a[1] * b[0];
        scale = std::max(scale, std::hypot(a[0], a[1]));
      }
      require(hull.size() >= 4 && area > 1e-12 * scale * scale,
              "symmetric hull of the vertices must have nonempty interior containing the origin");
      break;
    }
  }
}

Space::Space(int dim, Gauge gauge, std::string label, bool euclidean)
    : dim_(dim), gauge_(std::move(gauge)), label_(std::move(label)), euclidean_(euclidean) {
  if (dim_ < 1 || dim_ > kMaxDim) throw SpecError("space dimension out of range");
}

Space build_space(const NormSpec& spec) {
  validate_spec(spec);
  Space::Gauge gauge;
  bool euclidean = false;
  switch (spec.family) {
    case NormFamily::lp:
      gauge = lp_gauge(*spec.p, {});
      euclidean = *spec.p == 2.0;
      break;
    case NormFamily::weighted_lp:
      gauge = lp_gauge(*spec.p, Eigen::Map<const Eigen::VectorXd>(spec.weights.data(), spec.dim));
      euclidean = *spec.p == 2.0;
      break;
    case NormFamily::linf:
      gauge = [](const Vector& x) { return x.lpNorm<Eigen::Infinity>(); };
      break;
    case NormFamily::poly_functionals:
      gauge = functional_gauge(to_matrix(spec.functionals, spec.dim));
      break;
    case NormFamily::poly_vertices:
      gauge = functional_gauge(to_matrix(facet_functionals(spec.vertices), 2));
      break;
  }
  Space space(spec.dim, std::move(gauge), format_norm_spec(spec), euclidean);
  space.spec_ = spec;
  return space;
}

std::string to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::positivity: return "positivity";
    case Axiom::homogeneity: return "homogeneity";
    case Axiom::triangle: return "triangle";
  }
  return "unknown";
}

std::vector<AxiomViolation> validate_space(const Space& space, int samples, std::uint64_t seed) {
  if (samples < 1) throw SpecError("samples must be >= 1");
  const int n = space.dim();
  std::vector<AxiomViolation> out;
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng()); };
  auto random_vector = [&] {
    Vector v(n);
    const double scale = std::exp(uniform(-3.0, 3.0));
    for (int i = 0; i < n; ++i) v[i] = scale * uniform(-1.0, 1.0);
    return v;
  };
  const Vector zero = Vector::Zero(n);

  auto check_positive = [&](const Vector& x) {
    const double g = space.norm(x);
    const bool ok = x.isZero(0.0) ? g == 0.0 : (std::isfinite(g) && g > 0.0);
    if (!ok) out.push_back({Axiom::positivity, x, zero, 0.0, g, 0.0});
  };

  check_positive(zero);
  for (int i = 0; i < n; ++i) {
    check_positive(Vector::Unit(n, i));
    check_positive(-Vector::Unit(n, i));
  }

  for (int s = 0; s < samples; ++s) {
    const Vector x = random_vector();
    const Vector y = random_vector();
    const double lambda = uniform(-10.0, 10.0);
    check_positive(x);

    const double gx = space.norm(x);
    const double gy = space.norm(y);
    const double scaled = space.norm(lambda * x);
    const double expected = std::abs(lambda) * gx;
    if (!(std::abs(scaled - expected) <= kAxiomTolerance * std::max(1.0, std::abs(expected))))
      out.push_back({Axiom::homogeneity, x, zero, lambda, scaled, expected});

    const double gsum = space.norm(x + y);
    if (!(gsum <= gx + gy + kAxiomTolerance * std::max(1.0, std::abs(gx) + std::abs(gy))))
      out.push_back({Axiom::triangle, x, y, 0.0, gsum, gx + gy});
  }
  return out;
}

}  // namespace normgeom
