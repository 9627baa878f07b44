#include "normgeom/report.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

using namespace normgeom;

namespace {

int significant_digits(const std::string& text) {
  int digits = 0;
  bool leading = true;
  for (char ch : text) {
    if (ch == 'e' || ch == 'E') break;
    if (ch < '0' || ch > '9') continue;
    if (leading && ch == '0') continue;
    leading = false;
    ++digits;
  }
  return digits;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') quoted = !quoted;
    if (ch == sep && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

const VerificationReport& l1_report() {
  static const VerificationReport r = run_checks(build_space(NormSpec::lp(1, 2)), default_config(2));
  return r;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("12 significant digits") {
    CHECK(round_sig12(1.0 / 3.0) == 0.333333333333);
    CHECK(round_sig12(2.0 / 3.0 * 1e-7) == 6.66666666667e-8);
    CHECK(round_sig12(0.0) == 0.0);
    CHECK(std::isinf(round_sig12(std::numeric_limits<double>::infinity())));
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "null");
    CHECK(format_number(std::nan("")) == "null");
    for (double v : {std::sqrt(2.0), 1e-5 / 3, -123456.7890123456, 1e-12 * std::acos(-1.0), 2.0 / 3e8}) {
      const std::string text = format_number(v);
      INFO(text);
      CHECK(significant_digits(text) <= 12);
      CHECK(std::stod(text) == round_sig12(v));
    }
    // Small magnitudes use lowercase scientific notation.
    const std::string small = format_number(1.25e-5);
    CHECK(small.find('e') != std::string::npos);
    CHECK(small.find('E') == std::string::npos);
    CHECK(format_number(0.001).find('e') == std::string::npos);
  }

  TEST_CASE("config round-trip") {
    SearchConfig cfg = default_config(3);
    cfg.seed = 18446744073709551557ull;
    cfg.eta = 2.5e-7;
    CHECK(config_from_json(config_to_json(cfg)) == cfg);
    Json j = config_to_json(cfg);
    j.erase("tol");
    CHECK_THROWS_AS(config_from_json(j), SpecError);
  }

  TEST_CASE("report JSON round-trips") {
    const VerificationReport& r = l1_report();
    const Json j = report_to_json(r);
    for (const char* key : {"space", "config", "constants", "checks", "labels", "timing"}) CHECK(j.contains(key));
    CHECK(j.begin().key() == "space");
    CHECK(j["space"]["spec"] == "lp:p=1,dim=2");
    CHECK(j["constants"]["sp"]["value"] == 0.5);
    CHECK(j["constants"]["sp"]["witness"].size() == 2);
    CHECK(j["constants"]["delta(0)"]["parameter"] == 0.0);
    CHECK(j["constants"]["sp"]["parameter"].is_null());

    const VerificationReport back = report_from_json(j);
    CHECK(report_to_json(back) == j);
    CHECK(report_to_json(report_from_json(Json::parse(j.dump()))).dump() == j.dump());
    CHECK(back.checks.size() == r.checks.size());
    CHECK(back.config == r.config);
    CHECK(back.labels == r.labels);
    // +infinity survives as null.
    const auto it = std::find_if(back.checks.begin(), back.checks.end(),
                                 [](const CheckResult& c) { return c.name == "delta0_family"; });
    REQUIRE(it != back.checks.end());
    CHECK(std::isinf(it->rhs));
    CHECK(j["checks"][13]["rhs"].is_null());
  }

  TEST_CASE("schema mismatches are rejected") {
    Json j = report_to_json(l1_report());
    Json no_checks = j;
    no_checks.erase("checks");
    CHECK_THROWS_AS(report_from_json(no_checks), SpecError);
    Json bad_mode = j;
    bad_mode["constants"]["sp"]["mode"] = "sideways";
    CHECK_THROWS_AS(report_from_json(bad_mode), SpecError);
    Json bad_value = j;
    bad_value["constants"]["sp"]["value"] = "half";
    CHECK_THROWS_AS(report_from_json(bad_value), SpecError);
    // Timing is optional on input.
    Json untimed = j;
    untimed.erase("timing");
    CHECK_NOTHROW(report_from_json(untimed));
  }

  TEST_CASE("CSV rows match the JSON values") {
    const VerificationReport& r = l1_report();
    const Json j = report_to_json(r);
    std::istringstream in(constants_csv(r));
    std::string line;
    std::getline(in, line);
    CHECK(line == "space,constant,parameter,value,converged,evaluations");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      const auto cells = split(line, ',');
      REQUIRE(cells.size() == 6);
      CHECK(cells[0] == "\"lp:p=1,dim=2\"");
      const Json& c = j.at("constants").at(cells[1]);
      CHECK(cells[3] == c.at("value").dump());
      CHECK(cells[2] == (c.at("parameter").is_null() ? "" : c.at("parameter").dump()));
      CHECK(cells[4] == (c.at("converged").get<bool>() ? "true" : "false"));
      ++rows;
    }
    CHECK(rows == r.constants.size());
    CHECK(constants_csv(r, false).rfind("\"lp", 0) == 0);
  }
}
