// normgeom: geometric constants of finite-dimensional normed spaces.
//
// Exit codes: 0 success / all checks pass, 1 a check failed or a computation
// failed, 2 usage error (bad flags, malformed norm spec or range).

#include "normgeom/constants.hpp"
#include "normgeom/oracle.hpp"
#include "normgeom/report.hpp"
#include "normgeom/verify.hpp"

#include <cstdio>
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

using namespace normgeom;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComputeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigFlags {
  std::optional<int> grid;
  std::optional<int> refine;
  std::optional<int> multistart;
  std::optional<double> tol;
  std::optional<double> eta;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* app) {
    app->add_option("--grid", grid, "grid points per sphere parameter (default 720 in 2D, 24 otherwise)");
    app->add_option("--refine", refine, "polish sweeps per start (default 200)");
    app->add_option("--multistart", multistart, "grid cells polished (default 16)");
    app->add_option("--tol", tol, "polish stall tolerance (default 1e-9)");
    app->add_option("--eta", eta, "degenerate-pair exclusion radius (default 1e-6)");
    app->add_option("--seed", seed, "seed (default 42)");
  }

  SearchConfig resolve(int dim) const {
    SearchConfig cfg = default_config(dim);
    if (grid) cfg.grid_per_dim = *grid;
    if (refine) cfg.refine_iters = *refine;
    if (multistart) cfg.multistart = *multistart;
    if (tol) cfg.tol = *tol;
    if (eta) cfg.eta = *eta;
    if (seed) cfg.seed = *seed;
    try {
      validate_config(cfg);
    } catch (const SpecError& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

NormSpec parse_spec(const std::string& text) {
  try {
    return parse_norm_spec(text);
  } catch (const SpecError& e) {
    throw UsageError(e.what());
  }
}

Space make_space(const NormSpec& spec) {
  try {
    return build_space(spec);
  } catch (const SpecError& e) {
    throw UsageError(e.what());
  }
}

// Runs one constant computation, turning failures into a ComputeError that
// names the constant.
template <class F>
auto compute(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw ComputeError("computing " + name + " failed: " + e.what());
  }
}

std::string param_name(const std::string& base, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", round_sig12(v));
  return base + "(" + buf + ")";
}

// "a:b:s" with s > 0 and a <= b; values a + k s up to b.
std::vector<double> parse_range(const std::string& flag, const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": expected a:b:step, got '" + text + "'");
    }
  }
  if (parts.size() != 3) throw UsageError(flag + ": expected a:b:step, got '" + text + "'");
  const double a = parts[0], b = parts[1], s = parts[2];
  if (!(s > 0.0)) throw UsageError(flag + ": step must be positive");
  if (!(a <= b)) throw UsageError(flag + ": range is empty or inverted");
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const double v = a + static_cast<double>(k) * s;
    if (v > b + 1e-9 * std::max(1.0, std::abs(b))) break;
    out.push_back(round_sig12(v));
  }
  return out;
}

ConstantEstimate sweep_value(const Space& space, const std::string& what, double v, const SearchConfig& cfg,
                             DeltaMode mode) {
  if (what == "gamma") return gamma(space, v, cfg);
  if (what == "delta") return delta(space, v, cfg, mode);
  return rho(space, v, cfg);
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- constants

struct ConstantsArgs {
  std::string space;
  std::string format = "json";
  std::vector<double> gamma_t, delta_eps, rho_t;
  std::string delta_mode = "geq";
  bool oracle = false;
  int oracle_grid = 3600;
  ConfigFlags cfg;
};

int run_constants(const ConstantsArgs& args) {
  const NormSpec spec = parse_spec(args.space);
  const Space space = make_space(spec);
  const SearchConfig cfg = args.cfg.resolve(space.dim());
  const DeltaMode mode = args.delta_mode == "eq" ? DeltaMode::eq : DeltaMode::geq;
  if (args.oracle && space.dim() != 2) throw UsageError("--oracle requires a 2D space");

  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.space = format_norm_spec(spec);
  rep.euclidean = space.euclidean();
  rep.config = cfg;
  auto add = [&](const std::string& name, auto&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    ConstantEstimate est = compute(name, f);
    rep.constants.push_back({name, std::move(est),
                             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
  };

  add("sp", [&] { return sp_constant(space, cfg); });
  add("james", [&] { return james(space, cfg); });
  add("cnj", [&] { return cnj(space, cfg); });
  add("cnj_prime", [&] { return cnj_prime(space, cfg); });
  add("zbaganu", [&] { return zbaganu(space, cfg); });
  add("schaffer", [&] { return schaffer(space, cfg); });
  {
    const auto t0 = std::chrono::steady_clock::now();
    auto [lo, hi] = compute("t/T", [&] { return t_and_T(space, cfg); });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.constants.push_back({"t", std::move(lo), secs});
    rep.constants.push_back({"T", std::move(hi), 0.0});
  }
  add("eps0", [&] { return eps0(space, cfg); });
  for (double t : args.gamma_t) add(param_name("gamma", t), [&] { return gamma(space, t, cfg); });
  for (double e : args.delta_eps) add(param_name("delta", e), [&] { return delta(space, e, cfg, mode); });
  for (double t : args.rho_t) add(param_name("rho", t), [&] { return rho(space, t, cfg); });

  Json oracle = Json::object();
  if (args.oracle) {
    const auto objectives = standard_oracle_objectives();
    const auto results = compute("oracle", [&] {
      return oracle_plus_minus_extrema(space, objectives, args.oracle_grid, cfg.eta);
    });
    for (std::size_t k = 0; k < objectives.size(); ++k) {
      const double opt = rep.constant(objectives[k].name).value;
      oracle[objectives[k].name] = {{"value", round_sig12(results[k].value)},
                                    {"grid_size", results[k].grid_size},
                                    {"theta", round_sig12(results[k].theta)},
                                    {"phi", round_sig12(results[k].phi)},
                                    {"optimizer_difference", round_sig12(opt - results[k].value)}};
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (args.format == "csv") {
    std::cout << constants_csv(rep);
    for (const auto& [name, o] : oracle.items())
      std::cout << "\"" << rep.space << "\",oracle:" << name << ",," << o.at("value").dump() << ",true,"
                << static_cast<long long>(o.at("grid_size").get<int>()) * o.at("grid_size").get<int>() << "\n";
    return 0;
  }
  Json j = report_to_json(rep);
  if (args.oracle) {
    Json timing = j["timing"];
    j.erase("timing");
    j["oracle"] = oracle;
    j["timing"] = timing;
  }
  print_json(j);
  return 0;
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string space;
  std::string p, gamma_t, delta_eps, rho_t;
  std::string delta_mode = "geq";
  ConfigFlags cfg;
};

int run_sweep(const SweepArgs& args) {
  const int chosen = !args.p.empty() + !args.gamma_t.empty() + !args.delta_eps.empty() + !args.rho_t.empty();
  if (chosen != 1) throw UsageError("sweep: give exactly one of --p, --gamma-t, --delta-eps, --rho-t");
  const NormSpec base = parse_spec(args.space);
  std::ostringstream out;

  if (!args.p.empty()) {
    if (base.family != NormFamily::lp && base.family != NormFamily::weighted_lp)
      throw UsageError("sweep --p needs an lp or wlp space");
    const auto ps = parse_range("--p", args.p);
    const SearchConfig cfg = args.cfg.resolve(base.dim);
    out << "p,sp,lower_bound,bound_ok\n";
    for (double p : ps) {
      NormSpec spec = base;
      spec.p = p;
      const Space space = make_space(spec);
      const double v = compute("sp", [&] { return sp_constant(space, cfg); }).value;
      const double bound = 1.0 - std::pow(2.0, -std::abs(2.0 / p - 1.0));
      out << format_number(p) << "," << format_number(v) << "," << format_number(bound) << ","
          << (v >= bound - 1e-6 ? "true" : "false") << "\n";
    }
  } else {
    const Space space = make_space(base);
    const SearchConfig cfg = args.cfg.resolve(space.dim());
    const DeltaMode mode = args.delta_mode == "eq" ? DeltaMode::eq : DeltaMode::geq;
    std::string what, column, flag, text;
    if (!args.gamma_t.empty()) what = "gamma", column = "t", flag = "--gamma-t", text = args.gamma_t;
    if (!args.delta_eps.empty()) what = "delta", column = "eps", flag = "--delta-eps", text = args.delta_eps;
    if (!args.rho_t.empty()) what = "rho", column = "t", flag = "--rho-t", text = args.rho_t;
    const auto values = parse_range(flag, text);
    if (what == "gamma" && (values.front() < 0.0 || values.back() > 1.0))
      throw UsageError("--gamma-t: values must lie in [0, 1]");
    if (what == "delta" && (values.front() < 0.0 || values.back() > 2.0))
      throw UsageError("--delta-eps: values must lie in [0, 2]");
    if (what == "rho" && values.front() < 0.0) throw UsageError("--rho-t: values must be nonnegative");
    out << column << "," << what << ",converged\n";
    for (double v : values) {
      const auto est = compute(param_name(what, v), [&] { return sweep_value(space, what, v, cfg, mode); });
      out << format_number(v) << "," << format_number(est.value) << "," << (est.converged ? "true" : "false") << "\n";
    }
  }
  std::cout << out.str();
  return 0;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string space;
  std::string battery;
  ConfigFlags cfg;
};

std::pair<std::uint64_t, int> parse_battery(const std::string& text) {
  std::optional<std::uint64_t> seed;
  std::optional<int> count;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    const std::string key = item.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : item.substr(eq + 1);
    try {
      std::size_t used = 0;
      if (key == "seed") {
        seed = std::stoull(value, &used);
      } else if (key == "count") {
        count = std::stoi(value, &used);
      } else {
        throw std::invalid_argument(key);
      }
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw UsageError("--battery: expected seed=<N>,count=<K>, got '" + text + "'");
    }
  }
  if (!seed || !count || *count < 1) throw UsageError("--battery: expected seed=<N>,count=<K> with K >= 1");
  return {*seed, *count};
}

void list_failures(const VerificationReport& rep) {
  for (const auto& c : rep.checks)
    if (c.status == CheckStatus::fail)
      std::cerr << "FAIL " << rep.space << " " << c.name << ": " << c.statement << " (lhs " << format_number(c.lhs)
                << ", rhs " << format_number(c.rhs) << ")\n";
}

int run_verify(const VerifyArgs& args) {
  if (args.space.empty() == args.battery.empty()) throw UsageError("verify: give exactly one of --space, --battery");
  auto check = [&](const Space& space) {
    const SearchConfig cfg = args.cfg.resolve(space.dim());
    try {
      return run_checks(space, cfg);
    } catch (const std::exception& e) {
      throw ComputeError(e.what());
    }
  };

  if (!args.space.empty()) {
    const Space space = make_space(parse_spec(args.space));
    const auto rep = check(space);
    print_json(report_to_json(rep));
    list_failures(rep);
    return rep.passed() ? 0 : kExitFail;
  }

  const auto [seed, count] = parse_battery(args.battery);
  const auto start = std::chrono::steady_clock::now();
  Json reports = Json::array();
  bool ok = true;
  for (const auto& spec : polygon_battery(seed, count)) {
    const auto rep = check(make_space(spec));
    Json j = report_to_json(rep);
    j.erase("timing");  // per-space timing is folded into the battery timing
    reports.push_back(std::move(j));
    list_failures(rep);
    ok = ok && rep.passed();
  }
  Json out;
  out["battery"] = {{"seed", seed}, {"count", count}};
  out["reports"] = std::move(reports);
  out["timing"] = {
      {"total_seconds", round_sig12(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count())}};
  print_json(out);
  return ok ? 0 : kExitFail;
}

// ------------------------------------------------------------------ witness

struct WitnessArgs {
  std::string space;
  std::string constant;
  double param = 1.0;
  int samples = 720;
  ConfigFlags cfg;
};

const std::vector<std::string>& witness_names() {
  static const std::vector<std::string> names = {"sp",    "james", "cnj_prime", "cnj",   "zbaganu", "schaffer",
                                                 "t",     "T",     "sqrt2_pair", "gamma", "delta",   "rho"};
  return names;
}

int run_witness(const WitnessArgs& args) {
  const auto& names = witness_names();
  if (std::find(names.begin(), names.end(), args.constant) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw UsageError("unknown constant '" + args.constant + "'; valid names: " + list);
  }
  if (args.samples < 3) throw UsageError("--samples must be >= 3");
  const Space space = make_space(parse_spec(args.space));
  const SearchConfig cfg = args.cfg.resolve(space.dim());
  const std::string& c = args.constant;

  const ConstantEstimate est = compute(c, [&]() -> ConstantEstimate {
    if (c == "sp") return sp_constant(space, cfg);
    if (c == "james") return james(space, cfg);
    if (c == "cnj_prime") return cnj_prime(space, cfg);
    if (c == "cnj") return cnj(space, cfg);
    if (c == "zbaganu") return zbaganu(space, cfg);
    if (c == "schaffer") return schaffer(space, cfg);
    if (c == "t") return t_and_T(space, cfg).first;
    if (c == "T") return t_and_T(space, cfg).second;
    if (c == "sqrt2_pair") return sqrt2_pair_residual(space, cfg);
    if (c == "gamma") return gamma(space, args.param, cfg);
    if (c == "delta") return delta(space, args.param, cfg);
    return rho(space, args.param, cfg);
  });

  const int n = space.dim();
  std::ostringstream out;
  out << "kind,label";
  for (int i = 1; i <= n; ++i) out << ",x" << i;
  out << ",norm\n";
  auto row = [&](const std::string& kind, const std::string& label, const Vector& v) {
    out << kind << "," << label;
    for (int i = 0; i < n; ++i) out << "," << format_number(v[i]);
    out << "," << format_number(space.norm(v)) << "\n";
  };

  // Unit circle of the plane through the first two coordinates.
  for (int k = 0; k < args.samples; ++k) {
    const double a = 2.0 * std::numbers::pi * k / args.samples;
    Vector d = Vector::Zero(n);
    d[0] = std::cos(a);
    d[1] = std::sin(a);
    row("sphere", std::to_string(k), d / space.norm(d));
  }

  // Constants that scale the second vector report it as t y.
  const bool scaled = c == "cnj" || c == "zbaganu" || c == "gamma" || c == "rho";
  const double s = scaled && est.parameter ? *est.parameter : 1.0;
  const Vector& x = est.witness.at(0);
  const Vector y = s * est.witness.at(1);
  const std::string yl = scaled ? "ty" : "y";
  row("witness", "x", x);
  row("witness", yl, y);
  row("witness", "x+" + yl, x + y);
  row("witness", "x-" + yl, x - y);
  std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric constants of finite-dimensional normed spaces"};
  app.require_subcommand(1);

  ConstantsArgs cargs;
  auto* constants = app.add_subcommand("constants", "compute every constant of one space");
  constants->add_option("--space", cargs.space, "norm spec, e.g. lp:p=1.5,dim=2")->required();
  constants->add_option("--format", cargs.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  constants->add_option("--gamma-t", cargs.gamma_t, "t values for gamma")->delimiter(',')->check(CLI::Range(0.0, 1.0));
  constants->add_option("--delta-eps", cargs.delta_eps, "eps values for delta")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 2.0));
  constants->add_option("--rho-t", cargs.rho_t, "t values for rho")->delimiter(',')->check(CLI::NonNegativeNumber);
  constants->add_option("--delta-mode", cargs.delta_mode, "geq or eq")->check(CLI::IsMember({"geq", "eq"}));
  constants->add_flag("--oracle", cargs.oracle, "cross-check pair constants with a brute-force scan (2D)");
  constants->add_option("--oracle-grid", cargs.oracle_grid, "angles per point for --oracle (default 3600)")
      ->check(CLI::Range(100, 100000));
  cargs.cfg.attach(constants);

  SweepArgs sargs;
  auto* sweep = app.add_subcommand("sweep", "tabulate a constant over a parameter range (CSV)");
  sweep->add_option("--space", sargs.space, "norm spec; for --p the exponent may be omitted")->required();
  sweep->add_option("--p", sargs.p, "exponent range a:b:step for sp");
  sweep->add_option("--gamma-t", sargs.gamma_t, "t range a:b:step for gamma");
  sweep->add_option("--delta-eps", sargs.delta_eps, "eps range a:b:step for delta");
  sweep->add_option("--rho-t", sargs.rho_t, "t range a:b:step for rho");
  sweep->add_option("--delta-mode", sargs.delta_mode, "geq or eq")->check(CLI::IsMember({"geq", "eq"}));
  sargs.cfg.attach(sweep);

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "run every inequality check (exit 1 on failure)");
  verify->add_option("--space", vargs.space, "norm spec");
  verify->add_option("--battery", vargs.battery, "seed=<N>,count=<K> random polygon norms");
  vargs.cfg.attach(verify);

  WitnessArgs wargs;
  auto* witness = app.add_subcommand("witness", "unit circle and extremal pair as plot data (CSV)");
  witness->add_option("--space", wargs.space, "norm spec")->required();
  witness->add_option("--constant", wargs.constant, "sp, james, cnj_prime, cnj, zbaganu, schaffer, t, T, "
                                                    "sqrt2_pair, gamma, delta or rho")
      ->required();
  witness->add_option("--param", wargs.param, "t or eps for gamma, delta and rho (default 1)");
  witness->add_option("--samples", wargs.samples, "circle samples (default 720)");
  wargs.cfg.attach(witness);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*constants) return run_constants(cargs);
    if (*sweep) return run_sweep(sargs);
    if (*verify) return run_verify(vargs);
    return run_witness(wargs);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
