#pragma once

#include "normgeom/constants.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace normgeom {

enum class Relation { le, ge, eq, iff };
enum class CheckStatus { pass, fail, vacuous };

std::string to_string(Relation r);    // "<=", ">=", "=", "<=>"
std::string to_string(CheckStatus s); // "pass", "fail", "vacuous"
Relation parse_relation(const std::string& text);
CheckStatus parse_check_status(const std::string& text);

/// One numeric inequality evaluated on computed constants. `lhs` and `rhs`
/// are the compared quantities; an unbounded side is +infinity.
struct CheckResult {
  std::string name;
  std::string statement;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::le;
  double slack = 0.0;
  CheckStatus status = CheckStatus::pass;
  std::string note;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct NamedEstimate {
  std::string name;
  ConstantEstimate estimate;
  double seconds = 0.0;
};

struct VerificationReport {
  std::string space;  // canonical norm spec, or the space label for custom gauges
  bool euclidean = false;
  SearchConfig config;
  std::vector<NamedEstimate> constants;
  std::vector<CheckResult> checks;
  std::vector<std::string> labels;
  double seconds = 0.0;

  bool passed() const;
  const ConstantEstimate& constant(const std::string& name) const;
};

/// Check names in report order.
const std::vector<std::string>& check_names();

/// t values used by the gamma based checks: 0.1, 0.2, ..., 1.0.
std::vector<double> check_t_grid();

/// Computes every constant once, then evaluates all registered checks.
/// A failing constant computation is rethrown as SpecError naming the check
/// that needed it.
VerificationReport run_checks(const Space& space, const SearchConfig& cfg);

/// Seeded random symmetric polygons in the plane with 6 to 16 vertices.
std::vector<NormSpec> polygon_battery(std::uint64_t seed, int count);

/// lp on the plane for p in {1, 1.2, 1.5, 2, 3, 4} and the max norm.
std::vector<NormSpec> lp_battery();

}  // namespace normgeom
