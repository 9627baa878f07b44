#include "normgeom/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace normgeom {

double round_sig12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return std::strtod(buf, nullptr);
}

namespace {

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_sig12(v);
}

double number_from(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw SpecError("report: expected a number, got " + j.dump());
  return j.get<double>();
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw SpecError(std::string("report: missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("report: bad value for '") + key + "': " + e.what());
  }
}

SearchMode parse_mode(const std::string& s) {
  for (SearchMode m : {SearchMode::sup, SearchMode::inf, SearchMode::infsup})
    if (to_string(m) == s) return m;
  throw SpecError("report: unknown search mode '" + s + "'");
}

}  // namespace

std::string format_number(double v) { return number(v).dump(); }

Json config_to_json(const SearchConfig& cfg) {
  Json j;
  j["grid_per_dim"] = cfg.grid_per_dim;
  j["refine_iters"] = cfg.refine_iters;
  j["multistart"] = cfg.multistart;
  j["tol"] = cfg.tol;
  j["eta"] = cfg.eta;
  j["seed"] = cfg.seed;
  return j;
}

SearchConfig config_from_json(const Json& j) {
  SearchConfig cfg;
  cfg.grid_per_dim = field<int>(j, "grid_per_dim");
  cfg.refine_iters = field<int>(j, "refine_iters");
  cfg.multistart = field<int>(j, "multistart");
  cfg.tol = field<double>(j, "tol");
  cfg.eta = field<double>(j, "eta");
  cfg.seed = field<std::uint64_t>(j, "seed");
  return cfg;
}

Json estimate_to_json(const ConstantEstimate& est) {
  Json j;
  j["value"] = number(est.value);
  Json w = Json::array();
  for (const auto& v : est.witness) {
    Json row = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(number(v[i]));
    w.push_back(std::move(row));
  }
  j["witness"] = std::move(w);
  j["parameter"] = est.parameter ? number(*est.parameter) : Json(nullptr);
  j["mode"] = to_string(est.mode);
  j["converged"] = est.converged;
  j["evaluations"] = est.evaluations;
  j["near_excluded"] = est.near_excluded;
  return j;
}

ConstantEstimate estimate_from_json(const Json& j, const SearchConfig& cfg) {
  ConstantEstimate est;
  est.value = number_from(j.at("value"));
  for (const auto& row : field<Json>(j, "witness")) {
    Vector v(static_cast<Eigen::Index>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) v[static_cast<Eigen::Index>(i)] = number_from(row[i]);
    est.witness.push_back(v);
  }
  if (j.contains("parameter") && !j.at("parameter").is_null()) est.parameter = number_from(j.at("parameter"));
  est.mode = parse_mode(field<std::string>(j, "mode"));
  est.converged = field<bool>(j, "converged");
  est.evaluations = field<long long>(j, "evaluations");
  est.near_excluded = field<bool>(j, "near_excluded");
  est.config = cfg;
  return est;
}

Json report_to_json(const VerificationReport& report) {
  Json j;
  j["space"] = {{"spec", report.space}, {"euclidean", report.euclidean}};
  j["config"] = config_to_json(report.config);
  Json constants = Json::object();
  for (const auto& c : report.constants) constants[c.name] = estimate_to_json(c.estimate);
  j["constants"] = std::move(constants);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"statement", c.statement},
                      {"lhs", number(c.lhs)},
                      {"rhs", number(c.rhs)},
                      {"relation", to_string(c.relation)},
                      {"slack", number(c.slack)},
                      {"status", to_string(c.status)},
                      {"note", c.note}});
  }
  j["checks"] = std::move(checks);
  j["labels"] = report.labels;
  Json per = Json::object();
  for (const auto& c : report.constants) per[c.name] = number(c.seconds);
  j["timing"] = {{"total_seconds", number(report.seconds)}, {"constants_seconds", std::move(per)}};
  return j;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  const Json space = field<Json>(j, "space");
  r.space = field<std::string>(space, "spec");
  r.euclidean = field<bool>(space, "euclidean");
  r.config = config_from_json(field<Json>(j, "config"));
  const Json timing = j.contains("timing") ? j.at("timing") : Json::object();
  const Json per = timing.contains("constants_seconds") ? timing.at("constants_seconds") : Json::object();
  const Json constants = field<Json>(j, "constants");
  for (const auto& [name, value] : constants.items()) {
    NamedEstimate ne{name, estimate_from_json(value, r.config), 0.0};
    if (per.contains(name)) ne.seconds = number_from(per.at(name));
    r.constants.push_back(std::move(ne));
  }
  for (const auto& c : field<Json>(j, "checks")) {
    CheckResult cr;
    cr.name = field<std::string>(c, "name");
    cr.statement = field<std::string>(c, "statement");
    cr.lhs = number_from(c.at("lhs"));
    cr.rhs = number_from(c.at("rhs"));
    cr.relation = parse_relation(field<std::string>(c, "relation"));
    cr.slack = number_from(c.at("slack"));
    cr.status = parse_check_status(field<std::string>(c, "status"));
    cr.note = field<std::string>(c, "note");
    r.checks.push_back(std::move(cr));
  }
  r.labels = field<std::vector<std::string>>(j, "labels");
  if (timing.contains("total_seconds")) r.seconds = number_from(timing.at("total_seconds"));
  return r;
}

std::string constants_csv(const VerificationReport& report, bool header) {
  std::string out;
  if (header) out += "space,constant,parameter,value,converged,evaluations\n";
  for (const auto& c : report.constants) {
    const auto& e = c.estimate;
    out += "\"" + report.space + "\"," + c.name + "," + (e.parameter ? format_number(*e.parameter) : "") + "," +
           format_number(e.value) + "," + (e.converged ? "true" : "false") + "," + std::to_string(e.evaluations) +
           "\n";
  }
  return out;
}

}  // namespace normgeom
