#include "normgeom/sphere_search.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace normgeom;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

Space l(double p, int dim = 2) { return build_space(NormSpec::lp(p, dim)); }

PairObjective plus_norm(const Space& s) {
  return [&s](const Vector& x, const Vector& y) { return s.norm(x + y); };
}
PairObjective min_pm(const Space& s) {
  return {[&s](const Vector& x, const Vector& y) { return std::min(s.norm(x + y), s.norm(x - y)); },
          PairSymmetry::full_sign};
}
PairObjective max_pm(const Space& s) {
  return {[&s](const Vector& x, const Vector& y) { return std::max(s.norm(x + y), s.norm(x - y)); },
          PairSymmetry::full_sign};
}
PairObjective product_pm(const Space& s) {
  return {[&s](const Vector& x, const Vector& y) { return s.norm(x + y) * s.norm(x - y); }, PairSymmetry::full_sign};
}
PairObjective root_product_pm(const Space& s) {
  return {[&s](const Vector& x, const Vector& y) { return std::sqrt(s.norm(x + y) * s.norm(x - y)); },
          PairSymmetry::full_sign};
}

void check_witness(const Space& s, const PairObjective& f, const ConstantEstimate& est, const SearchConfig& cfg) {
  REQUIRE(est.witness.size() == 2);
  for (const auto& w : est.witness) CHECK(std::abs(s.norm(w) - 1.0) <= 1e-9);
  CHECK(std::abs(f.fn(est.witness[0], est.witness[1]) - est.value) <= cfg.tol);
}

}  // namespace

TEST_SUITE("sphere_search") {
  TEST_CASE("sphere points") {
    const Vector e = sphere_point(l(2), 0.0);
    CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(e[1]) < 1e-15);

    const Vector d = sphere_point(l(1), std::numbers::pi / 4);
    CHECK(d[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(0.5).epsilon(1e-15));

    const Vector c = sphere_point(l(3), std::numbers::pi / 4);
    CHECK(c[0] == doctest::Approx(std::pow(2.0, -1.0 / 3)).epsilon(1e-14));
    CHECK(c[1] == doctest::Approx(std::pow(2.0, -1.0 / 3)).epsilon(1e-14));

    const Space s3 = l(1.5, 3);
    const std::vector<double> dir{0.3, -2.0, 1.0};
    CHECK(std::abs(s3.norm(sphere_point(s3, dir)) - 1.0) <= 1e-12);

    const std::vector<double> zero{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(sphere_point(s3, zero), SpecError);
    const std::vector<double> short_dir{1.0, 0.0};
    CHECK_THROWS_AS(sphere_point(s3, short_dir), SpecError);
  }

  TEST_CASE("maximize_pair on closed-form objectives") {
    SearchConfig cfg = default_config(2);
    const Space l2 = l(2), l1 = l(1);

    cfg.grid_per_dim = 360;
    const auto sum = maximize_pair(l2, plus_norm(l2), cfg);
    CHECK(sum.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK((sum.witness[0] - sum.witness[1]).norm() < 1e-6);
    check_witness(l2, plus_norm(l2), sum, cfg);

    cfg = default_config(2);
    const auto jl1 = maximize_pair(l1, min_pm(l1), cfg);
    CHECK(jl1.value == doctest::Approx(2.0).epsilon(1e-12));
    check_witness(l1, min_pm(l1), jl1, cfg);

    const auto prod = maximize_pair(l2, product_pm(l2), cfg);
    CHECK(prod.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(prod.witness[0].dot(prod.witness[1])) < 1e-5);
    CHECK(prod.mode == SearchMode::sup);
    CHECK(prod.config == cfg);
    CHECK(prod.evaluations > 0);
  }

  TEST_CASE("minimize_pair on closed-form objectives") {
    const SearchConfig cfg = default_config(2);
    const Space l2 = l(2), l1 = l(1);

    const auto s2 = minimize_pair(l2, max_pm(l2), cfg);
    CHECK(std::abs(s2.value - kSqrt2) <= 1e-9);
    CHECK(s2.mode == SearchMode::inf);
    check_witness(l2, max_pm(l2), s2, cfg);

    const auto s1 = minimize_pair(l1, max_pm(l1), cfg);
    CHECK(std::abs(s1.value - 1.0) <= 1e-9);
    check_witness(l1, max_pm(l1), s1, cfg);

    const auto seven = minimize_pair(l(1.5), PairObjective([](const Vector&, const Vector&) { return 7.0; }), cfg);
    CHECK(seven.value == 7.0);
  }

  TEST_CASE("infsup_pair") {
    const SearchConfig cfg = default_config(2);
    const Space l2 = l(2), l1 = l(1);

    const auto t2 = infsup_pair(l2, root_product_pm(l2), cfg);
    CHECK(std::abs(t2.value - kSqrt2) <= 1e-6);
    CHECK(t2.mode == SearchMode::infsup);

    // Dense numpy grid gives 1.4142136 for l1.
    const auto t1 = infsup_pair(l1, root_product_pm(l1), cfg);
    CHECK(t1.value >= kSqrt2 - 1e-9);
    CHECK(t1.value <= 2.0);
    CHECK(std::abs(t1.value - kSqrt2) <= 1e-4);

    const auto c = infsup_pair(l(3), PairObjective([](const Vector&, const Vector&) { return -2.5; }), cfg);
    CHECK(c.value == -2.5);
  }

  TEST_CASE("searches are deterministic") {
    for (const Space& s : {l(1.5), l(3, 3)}) {
      const SearchConfig cfg = default_config(s.dim());
      const auto a = maximize_pair(s, min_pm(s), cfg);
      const auto b = maximize_pair(s, min_pm(s), cfg);
      CHECK(a.value == b.value);
      REQUIRE(a.witness.size() == b.witness.size());
      for (std::size_t i = 0; i < a.witness.size(); ++i) CHECK(a.witness[i] == b.witness[i]);
      CHECK(a.evaluations == b.evaluations);
    }
  }

  TEST_CASE("seed changes only the polish path, not the answer") {
    const Space s = l(4);
    SearchConfig cfg = default_config(2);
    const double v42 = maximize_pair(s, min_pm(s), cfg).value;
    cfg.seed = 1234;
    CHECK(std::abs(maximize_pair(s, min_pm(s), cfg).value - v42) <= 1e-9);
  }

  TEST_CASE("grid refinement is monotone without polish") {
    const Space s = l(1.3);
    for (int k : {16, 45, 90, 180}) {
      SearchConfig coarse = default_config(2);
      coarse.refine_iters = 0;
      coarse.grid_per_dim = k;
      SearchConfig fine = coarse;
      fine.grid_per_dim = 2 * k;
      // Shared grid angles are recomputed as 2 pi i / n, so allow last-bit differences.
      CHECK(maximize_pair(s, min_pm(s), fine).value >= maximize_pair(s, min_pm(s), coarse).value - 1e-14);
      CHECK(minimize_pair(s, max_pm(s), fine).value <= minimize_pair(s, max_pm(s), coarse).value + 1e-14);
    }
  }

  TEST_CASE("three-dimensional search") {
    const Space l2 = l(2, 3);
    const SearchConfig cfg = default_config(3);
    CHECK(cfg.grid_per_dim == 24);
    const auto j = maximize_pair(l2, min_pm(l2), cfg);
    CHECK(std::abs(j.value - kSqrt2) <= 1e-6);
    check_witness(l2, min_pm(l2), j, cfg);
  }

  TEST_CASE("parameter family search") {
    const Space l2 = l(2);
    PairFamily fam;
    fam.fn = [&l2](const Vector& x, const Vector& y, double t) { return l2.norm(x + t * y) - t * t; };
    fam.symmetry = PairSymmetry::joint_sign;
    // max over t of 1 + t - t^2 is 1.25 at t = 0.5.
    const auto est = maximize_pair_family(l2, fam, default_config(2));
    CHECK(est.value == doctest::Approx(1.25).epsilon(1e-9));
    REQUIRE(est.parameter.has_value());
    CHECK(*est.parameter == doctest::Approx(0.5).epsilon(1e-4));
  }

  TEST_CASE("degenerate pairs are excluded on request") {
    const Space l2 = l(2);
    SearchConfig cfg = default_config(2);
    cfg.eta = 0.5;
    const auto est = maximize_pair(l2, plus_norm(l2), cfg, true);
    // |x - y| >= 0.5 caps |x + y| at sqrt(4 - 0.25).
    CHECK(est.value <= std::sqrt(3.75) + 1e-9);
    CHECK(est.value >= std::sqrt(3.75) - 1e-6);
    CHECK(l2.norm(est.witness[0] - est.witness[1]) >= 0.5);
  }

  TEST_CASE("config validation") {
    SearchConfig cfg;
    CHECK_NOTHROW(validate_config(cfg));
    cfg.grid_per_dim = 7;
    CHECK_THROWS_AS(validate_config(cfg), SpecError);
    cfg = {};
    cfg.tol = 0.0;
    CHECK_THROWS_AS(validate_config(cfg), SpecError);
    cfg = {};
    cfg.eta = 1.0;
    CHECK_THROWS_AS(validate_config(cfg), SpecError);
    cfg = {};
    cfg.multistart = 0;
    CHECK_THROWS_AS(validate_config(cfg), SpecError);
    cfg = {};
    cfg.refine_iters = -1;
    CHECK_THROWS_AS(maximize_pair(l(2), plus_norm(l(2)), cfg), SpecError);
  }
}
