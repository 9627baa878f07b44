#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace normgeom {

/// Largest supported space dimension. Vectors live in fixed-capacity storage
/// so gauge evaluation never touches the heap.
inline constexpr int kMaxDim = 8;

using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Point2 = std::array<double, 2>;

/// Raised for malformed norm strings, bad search configurations or any other
/// invalid inputs. The message names the violated requirement.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class NormFamily { lp, linf, weighted_lp, poly_functionals, poly_vertices };

std::string to_string(NormFamily family);

/// Declarative description of a finite-dimensional norm.
struct NormSpec {
  NormFamily family = NormFamily::lp;
  std::optional<double> p;                    // lp and weighted_lp
  int dim = 0;
  std::vector<double> weights;                // weighted_lp
  std::vector<std::vector<double>> functionals;  // poly_functionals
  std::vector<Point2> vertices;               // poly_vertices (2D)

  static NormSpec lp(double p, int dim);
  static NormSpec linf(int dim);
  static NormSpec weighted_lp(double p, std::vector<double> weights);
  static NormSpec poly_functionals(std::vector<std::vector<double>> functionals);
  static NormSpec poly_vertices(std::vector<Point2> vertices);

  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

/// Throws SpecError naming the first violated invariant.
void validate_spec(const NormSpec& spec);

/// Parses the textual grammar
///   lp:p=<real>,dim=<int> | linf:dim=<int> | wlp:p=<real>,w=[..]
///   polyf:f=[[..],..]     | polyv:v=[[x,y],..]
/// Whitespace is ignored. The exponent of `lp` may be omitted (sweeps fill it
/// in); validate_spec rejects a spec that is still missing it.
NormSpec parse_norm_spec(const std::string& text);

/// Canonical text form; parse_norm_spec(format_norm_spec(s)) == s.
std::string format_norm_spec(const NormSpec& spec);

/// An evaluable normed space. Immutable; norm() is pure and thread-safe.
class Space {
 public:
  using Gauge = std::function<double(const Vector&)>;

  Space(int dim, Gauge gauge, std::string label = "custom", bool euclidean = false);

  int dim() const { return dim_; }
  double norm(const Vector& x) const { return gauge_(x); }
  const std::string& label() const { return label_; }
  /// True for gauges induced by an inner product (lp / weighted lp, p = 2).
  bool euclidean() const { return euclidean_; }
  const std::optional<NormSpec>& spec() const { return spec_; }

 private:
  friend Space build_space(const NormSpec& spec);

  int dim_;
  Gauge gauge_;
  std::string label_;
  bool euclidean_;
  std::optional<NormSpec> spec_;
};

Space build_space(const NormSpec& spec);

/// Facet functionals of conv(V ∪ -V) for a 2D vertex set: one functional f per
/// pair of opposite edges, normalized so that <f, v> = 1 on the edge. The
/// Minkowski gauge of the hull is max_f |<f, x>|.
std::vector<std::vector<double>> facet_functionals(const std::vector<Point2>& vertices);

/// Vertices of conv(V ∪ -V) in counter-clockwise order.
std::vector<Point2> symmetric_hull(const std::vector<Point2>& vertices);

enum class Axiom { positivity, homogeneity, triangle };

std::string to_string(Axiom axiom);

struct AxiomViolation {
  Axiom axiom;
  Vector x;
  Vector y;         // second argument of the triangle inequality
  double scalar = 0.0;  // lambda for homogeneity
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Relative tolerance used by validate_space.
inline constexpr double kAxiomTolerance = 1e-12;

/// Seeded sampling of the norm axioms. Probes the zero vector and +-e_i before
/// the random draws. An empty result means no violation was observed.
std::vector<AxiomViolation> validate_space(const Space& space, int samples, std::uint64_t seed);

/// Uniform double in [0, 1) from a 64-bit engine output; portable across
/// standard libraries, unlike std::uniform_real_distribution.
inline double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace normgeom
