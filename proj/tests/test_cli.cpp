#include "normgeom/report.hpp"
#include "process.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

using namespace normgeom;
using normgeom::testing::run_cli;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> cells_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') quoted = !quoted;
    if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// Rows of a CSV table keyed by column name.
std::vector<std::map<std::string, std::string>> table_of(const std::string& text) {
  const auto lines = lines_of(text);
  std::vector<std::map<std::string, std::string>> rows;
  if (lines.empty()) return rows;
  const auto header = cells_of(lines.front());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = cells_of(lines[i]);
    std::map<std::string, std::string> row;
    for (std::size_t k = 0; k < header.size() && k < cells.size(); ++k) row[header[k]] = cells[k];
    rows.push_back(std::move(row));
  }
  return rows;
}

double value_of(const Json& report, const std::string& name) {
  return report.at("constants").at(name).at("value").get<double>();
}

struct WitnessRows {
  std::vector<Vector> sphere;
  std::map<std::string, std::pair<Vector, double>> witness;
};

WitnessRows witness_rows(const std::string& csv) {
  WitnessRows w;
  for (const auto& row : table_of(csv)) {
    Vector v(2);
    v << std::stod(row.at("x1")), std::stod(row.at("x2"));
    if (row.at("kind") == "sphere")
      w.sphere.push_back(v);
    else
      w.witness[row.at("label")] = {v, std::stod(row.at("norm"))};
  }
  return w;
}

}  // namespace

TEST_CASE("constants: l1 plane") {
  const auto r = run_cli("constants --space lp:p=1,dim=2");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(std::abs(value_of(j, "sp") - 0.5) <= 1e-6);
  for (const char* name : {"sp", "james", "cnj", "cnj_prime", "zbaganu", "schaffer", "t", "T", "eps0"})
    CHECK(j.at("constants").contains(name));
  CHECK(std::abs(value_of(j, "eps0") - 2.0) <= 1e-3);
  CHECK(j.at("config").at("grid_per_dim") == 720);
  CHECK_FALSE(j.contains("oracle"));
}

TEST_CASE("constants: euclidean plane") {
  const auto r = run_cli("constants --space lp:p=2,dim=2");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(std::abs(value_of(j, "sp")) <= 1e-6);
  CHECK(std::abs(value_of(j, "zbaganu") - 1.0) <= 1e-4);
  CHECK(j.at("space").at("euclidean") == true);
}

TEST_CASE("constants: CSV for the max norm") {
  const auto r = run_cli("constants --space linf:dim=2 --format csv");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE_FALSE(lines.empty());
  CHECK(lines.front() == "space,constant,parameter,value,converged,evaluations");
  bool saw_james = false;
  for (const auto& row : table_of(r.out)) {
    CHECK(row.at("space") == "\"linf:dim=2\"");
    if (row.at("constant") == "james") {
      saw_james = true;
      CHECK(std::abs(std::stod(row.at("value")) - 2.0) <= 1e-6);
    }
  }
  CHECK(saw_james);
}

TEST_CASE("constants: JSON and CSV carry the same numbers, runs are reproducible") {
  const std::string args = "constants --space lp:p=1.5,dim=2 --grid 180 --gamma-t 0.5 --delta-eps 1 --rho-t 0.3,2";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  const auto csv = run_cli(args + " --format csv");
  REQUIRE(a.exit_code == 0);
  REQUIRE(csv.exit_code == 0);
  Json ja = Json::parse(a.out), jb = Json::parse(b.out);
  ja.erase("timing");
  jb.erase("timing");
  CHECK(ja.dump() == jb.dump());
  CHECK(ja.at("config").at("grid_per_dim") == 180);
  const auto rows = table_of(csv.out);
  CHECK(rows.size() == ja.at("constants").size());
  for (const auto& row : rows) {
    INFO(row.at("constant"));
    const Json& c = ja.at("constants").at(row.at("constant"));
    CHECK(row.at("value") == c.at("value").dump());
  }
  for (const char* name : {"gamma(0.5)", "delta(1)", "rho(0.3)", "rho(2)"}) CHECK(ja.at("constants").contains(name));
}

TEST_CASE("constants: oracle cross-check block") {
  const auto r = run_cli("constants --space lp:p=3,dim=2 --oracle --oracle-grid 900");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  REQUIRE(j.contains("oracle"));
  for (const char* name : {"sp", "james", "cnj_prime", "schaffer", "T"}) {
    const Json& o = j.at("oracle").at(name);
    CHECK(o.at("grid_size") == 900);
    CHECK(std::abs(o.at("optimizer_difference").get<double>()) <= 1e-3);
  }
  CHECK(run_cli("constants --space lp:p=3,dim=3 --oracle 2>/dev/null").exit_code == 2);
}

TEST_CASE("sweep over the exponent") {
  const auto r = run_cli("sweep --space lp:dim=2 --p 1.1:4.0:0.1");
  REQUIRE(r.exit_code == 0);
  const auto rows = table_of(r.out);
  CHECK(rows.size() == 30);
  CHECK(lines_of(r.out).front() == "p,sp,lower_bound,bound_ok");
  for (const auto& row : rows) {
    INFO("p = " << row.at("p"));
    CHECK(row.at("bound_ok") == "true");
  }
  CHECK(rows.front().at("p") == "1.1");
  CHECK(rows.back().at("p") == "4.0");
}

TEST_CASE("sweep over gamma and delta") {
  const auto g = run_cli("sweep --space lp:p=2,dim=2 --gamma-t 0:1:0.05");
  REQUIRE(g.exit_code == 0);
  const auto grows = table_of(g.out);
  CHECK(grows.size() == 21);
  for (const auto& row : grows) {
    const double t = std::stod(row.at("t"));
    CHECK(std::abs(std::stod(row.at("gamma")) - (1 + t * t)) <= 1e-6);
  }

  const auto d = run_cli("sweep --space lp:p=1,dim=2 --delta-eps 0:2:0.25");
  REQUIRE(d.exit_code == 0);
  const auto drows = table_of(d.out);
  CHECK(drows.size() == 9);
  for (const auto& row : drows) CHECK(std::abs(std::stod(row.at("delta"))) <= 1e-6);

  const auto rho = run_cli("sweep --space lp:p=2,dim=2 --rho-t 0:2:1");
  REQUIRE(rho.exit_code == 0);
  CHECK(lines_of(rho.out).front() == "t,rho,converged");
}

TEST_CASE("sweep usage errors") {
  CHECK(run_cli("sweep --space lp:dim=2 --p 4:1:0.1 2>/dev/null").exit_code == 2);
  CHECK(run_cli("sweep --space lp:dim=2 --p 1:4:0 2>/dev/null").exit_code == 2);
  CHECK(run_cli("sweep --space lp:dim=2 --p 1:4 2>/dev/null").exit_code == 2);
  CHECK(run_cli("sweep --space lp:p=2,dim=2 --gamma-t 0:2:0.5 2>/dev/null").exit_code == 2);
  CHECK(run_cli("sweep --space lp:p=2,dim=2 --gamma-t 0:1:0.5 --rho-t 0:1:0.5 2>/dev/null").exit_code == 2);
  CHECK(run_cli("sweep --space lp:p=2,dim=2 2>/dev/null").exit_code == 2);
}

TEST_CASE("verify single spaces") {
  CHECK(run_cli("verify --space lp:p=1.5,dim=2 >/dev/null").exit_code == 0);

  const auto r = run_cli("verify --space lp:p=1,dim=2");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  std::map<std::string, std::string> status;
  for (const auto& c : j.at("checks")) status[c.at("name")] = c.at("status");
  CHECK(status.at("thm51") == "vacuous");
  CHECK(status.at("delta0_family") == "vacuous");
  CHECK(status.at("prop56") == "pass");
}

TEST_CASE("verify battery output is reproducible") {
  const auto a = run_cli("verify --battery seed=3,count=2");
  const auto b = run_cli("verify --battery seed=3,count=2");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  Json ja = Json::parse(a.out), jb = Json::parse(b.out);
  CHECK(ja.at("reports").size() == 2);
  CHECK(ja.at("battery").at("seed") == 3);
  CHECK_FALSE(ja.at("reports").at(0).contains("timing"));
  ja.erase("timing");
  jb.erase("timing");
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("verify usage errors") {
  CHECK(run_cli("verify 2>/dev/null").exit_code == 2);
  CHECK(run_cli("verify --space lp:p=2,dim=2 --battery seed=1,count=1 2>/dev/null").exit_code == 2);
  CHECK(run_cli("verify --battery seed=1 2>/dev/null").exit_code == 2);
  CHECK(run_cli("verify --battery seed=x,count=2 2>/dev/null").exit_code == 2);
  CHECK(run_cli("verify --space lp:p=2,dim=2 --grid 4 2>/dev/null").exit_code == 2);
}

TEST_CASE("witness: l1 S_P pair") {
  const auto r = run_cli("witness --space lp:p=1,dim=2 --constant sp");
  REQUIRE(r.exit_code == 0);
  CHECK(lines_of(r.out).front() == "kind,label,x1,x2,norm");
  const auto w = witness_rows(r.out);
  CHECK(w.sphere.size() == 720);
  for (const auto& v : w.sphere) REQUIRE(std::abs(std::abs(v[0]) + std::abs(v[1]) - 1.0) <= 1e-10);
  REQUIRE(w.witness.count("x+y") == 1);
  CHECK(std::abs(w.witness.at("x+y").second - 2.0) <= 1e-3);
  CHECK(std::abs(w.witness.at("x-y").second - 2.0) <= 1e-3);
}

TEST_CASE("witness: euclidean James pair") {
  const auto r = run_cli("witness --space lp:p=2,dim=2 --constant james");
  REQUIRE(r.exit_code == 0);
  const auto w = witness_rows(r.out);
  CHECK(std::abs(w.witness.at("x+y").second - kSqrt2) <= 1e-3);
  CHECK(std::abs(w.witness.at("x-y").second - kSqrt2) <= 1e-3);
}

TEST_CASE("witness: polygon norm") {
  const auto r = run_cli("witness --space \"polyv:v=[[1,0],[0.6,0.8],[0,1]]\" --constant sp");
  REQUIRE(r.exit_code == 0);
  const auto w = witness_rows(r.out);
  CHECK(std::abs(w.witness.at("x").second - 1.0) <= 1e-9);
  CHECK(std::abs(w.witness.at("y").second - 1.0) <= 1e-9);
}

TEST_CASE("witness: scaled second vector") {
  const auto r = run_cli("witness --space lp:p=2,dim=2 --constant gamma --param 0.5 --samples 12");
  REQUIRE(r.exit_code == 0);
  const auto w = witness_rows(r.out);
  CHECK(w.sphere.size() == 12);
  CHECK(std::abs(w.witness.at("ty").second - 0.5) <= 1e-9);
}

TEST_CASE("witness: unknown constant lists the valid names") {
  const auto r = run_cli("witness --space lp:p=2,dim=2 --constant bogus 2>&1");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("valid names") != std::string::npos);
  CHECK(r.out.find("sqrt2_pair") != std::string::npos);
}

TEST_CASE("malformed norm spec") {
  const auto r = run_cli("constants --space lq:p=2 2>&1");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("lp:p=<real>,dim=<int>") != std::string::npos);
  CHECK(run_cli("constants --space lp:p=0.5,dim=2 2>/dev/null").exit_code == 2);
  CHECK(run_cli("constants 2>/dev/null").exit_code == 2);
  CHECK(run_cli("frobnicate 2>/dev/null").exit_code == 2);
  CHECK(run_cli("--help >/dev/null").exit_code == 0);
}
