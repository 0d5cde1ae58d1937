#include "gardner5/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gardner5/breather.hpp"
#include "gardner5/errors.hpp"
#include "gardner5/experiment.hpp"
#include "gardner5/io.hpp"
#include "gardner5/residuals.hpp"
#include "gardner5/solver.hpp"

namespace gardner5 {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    double v = 0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
      throw InvalidParameter(std::string("cannot parse ") + what + " '" + text + "'");
    }
    values.push_back(v);
    pos = end + 1;
  }
  return values;
}

PhaseConvention convention_for(bool published) {
  return published ? PhaseConvention::kPublished : PhaseConvention::kGardner;
}

BreatherParams params_from_flag(const std::string& text, bool published) {
  const auto v = parse_list(text, "--params");
  if (v.size() != 3 && v.size() != 5) {
    throw InvalidParameter("--params expects alpha,beta,mu[,x1,x2]");
  }
  return validate_params(v[0], v[1], v[2], v.size() == 5 ? v[3] : 0.0,
                         v.size() == 5 ? v[4] : 0.0, convention_for(published));
}

Grid grid_from_flag(const std::string& text) {
  const auto v = parse_list(text, "--grid");
  if (v.size() != 3) throw InvalidParameter("--grid expects center,length,points");
  if (!(v[2] >= 16) || v[2] != std::floor(v[2])) {
    throw InvalidParameter("--grid points must be an integer >= 16");
  }
  return make_grid(v[0], v[1], static_cast<std::size_t>(v[2]));
}

// Window of 80/beta around the envelope with >= 16 points per carrier period.
Grid default_eval_grid(const BreatherParams& p, double t) {
  return experiment_grid(envelope_center(p, t), p.beta(), p.alpha() + p.beta(), 80.0, 16.0);
}

// Wide window (80 pi / beta) at high resolution for derivative-heavy residuals.
Grid default_verify_grid(const BreatherParams& p, double t) {
  const double length = 80.0 * std::numbers::pi / p.beta();
  const double max_spacing = 2.0 * std::numbers::pi / (32.0 * std::max(p.alpha(), p.beta()));
  std::size_t points = 8192;
  while (length / static_cast<double>(points) > max_spacing) points *= 2;
  return make_grid(envelope_center(p, t), length, points);
}

json params_json(const BreatherParams& p) {
  return {{"alpha", p.alpha()},
          {"beta", p.beta()},
          {"mu", p.mu()},
          {"x1", p.x1()},
          {"x2", p.x2()},
          {"convention", p.convention() == PhaseConvention::kGardner ? "gardner" : "published"}};
}

json grid_json(const Grid& g) {
  return {{"center", g.center()}, {"length", g.length()}, {"points", g.points()}};
}

// Output sink: a file when a path is given, `fallback` otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InvalidParameter("cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidParameter("config '" + path + "' is not valid JSON: " + e.what());
  }
}

double json_number(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number()) {
    throw InvalidParameter(std::string("config key '") + key + "' must be a number");
  }
  return doc.at(key).get<double>();
}

std::size_t json_count(const json& doc, const char* key, std::size_t fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number_unsigned()) {
    throw InvalidParameter(std::string("config key '") + key + "' must be a non-negative integer");
  }
  return doc.at(key).get<std::size_t>();
}

// --- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string params;
  double time = 0;
  std::string grid;
  std::string form = "rational";
  std::string out;
  bool published = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const BreatherParams p = params_from_flag(a.params, a.published);
  const Grid grid = a.grid.empty() ? default_eval_grid(p, a.time) : grid_from_flag(a.grid);
  SampledField field(grid);
  if (a.form == "rational") {
    field = sample_breather(p, a.time, grid);
  } else if (a.form == "arctan") {
    field = eval_arctan_derivative(p, a.time, grid);
  } else {
    field = sample_approx(p, a.time, grid);
  }
  Sink sink(a.out, out);
  write_field_csv(sink.get(), field);
  return kExitOk;
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string params;
  double time = 0;
  std::string grid;
  std::string out;
  double corrupt = 0;
  bool published = false;
  std::vector<std::string> tolerances;
};

std::map<std::string, double> verify_tolerances(const std::vector<std::string>& overrides) {
  std::map<std::string, double> tol = {
      {"pde", 1e-6}, {"elliptic", 1e-7}, {"mass", 1e-10}, {"dual", 1e-9}, {"mkdv5", 1e-6}};
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidParameter("--tolerance expects name=value");
    const std::string key = item.substr(0, eq);
    if (!tol.contains(key)) {
      throw InvalidParameter("unknown tolerance '" + key + "' (pde, elliptic, mass, dual, mkdv5)");
    }
    const auto v = parse_list(item.substr(eq + 1), "--tolerance");
    if (v.size() != 1 || !(v[0] > 0)) throw InvalidParameter("tolerance must be positive");
    tol[key] = v[0];
  }
  return tol;
}

json report_check(const ResidualReport& r, double tolerance) {
  json j = to_json(r);
  j["tolerance"] = tolerance;
  j["pass"] = r.sup_rel <= tolerance;
  return j;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const BreatherParams p = params_from_flag(a.params, a.published);
  const Grid grid = a.grid.empty() ? default_verify_grid(p, a.time) : grid_from_flag(a.grid);
  const auto tol = verify_tolerances(a.tolerances);

  json checks;
  PdeResidualOptions options;
  options.corruption = a.corrupt;
  checks["pde"] = report_check(pde_residual(p, a.time, grid, options), tol.at("pde"));

  SampledField b = sample_breather(p, a.time, grid);
  checks["elliptic"] = report_check(elliptic_residual(p, b), tol.at("elliptic"));

  // The integral equals -2 arctan(4 mu beta / Delta), zero only at mu = 0.
  const double l2 = l2_norm(b);
  const double integral = mean(b);
  const double expected = breather_mass(p);
  const double scale = 1.0 + l2;
  checks["zero_mean"] = {{"integral", integral},
                         {"expected", expected},
                         {"gap", std::abs(integral - expected)},
                         {"tolerance", tol.at("mass") * scale},
                         {"zero_mean", std::abs(integral) <= tol.at("mass") * scale},
                         {"pass", std::abs(integral - expected) <= tol.at("mass") * scale}};

  const SampledField via_arctan = eval_arctan_derivative(p, a.time, grid);
  double gap = 0;
  double peak = 0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    gap = std::max(gap, std::abs(b.values[j] - via_arctan.values[j]));
    peak = std::max(peak, std::abs(b.values[j]));
  }
  checks["dual_form"] = {{"sup_gap", gap},
                         {"tolerance", tol.at("dual") * (1.0 + peak)},
                         {"pass", gap <= tol.at("dual") * (1.0 + peak)}};

  if (p.mu() == 0) {
    const TimeStencil stencil = make_time_stencil(p, a.time, grid, default_time_step(p));
    checks["mkdv5"] = report_check(mkdv5_residual(stencil), tol.at("mkdv5"));
  }

  bool pass = true;
  for (const auto& [name, check] : checks.items()) pass = pass && check.at("pass").get<bool>();
  const json doc = {{"params", params_json(p)},
                    {"t", a.time},
                    {"grid", grid_json(grid)},
                    {"corruption", a.corrupt},
                    {"checks", checks},
                    {"pass", pass}};
  Sink sink(a.out, out);
  write_json(sink.get(), doc);
  return pass ? kExitOk : kExitCheckFailed;
}

// --- evolve ---------------------------------------------------------------

struct EvolveArgs {
  std::string config;
  std::string out;
};

int cmd_evolve(const EvolveArgs& a, std::ostream& out, std::ostream& err) {
  const json doc = read_json_file(a.config);
  require_known_keys(doc, {"initial", "params", "grid", "solver", "published_frame"},
                     "evolve config");
  const std::string initial = doc.value("initial", std::string("breather"));
  if (initial != "breather" && initial != "zero") {
    throw InvalidParameter("'initial' must be \"breather\" or \"zero\"");
  }
  if (!doc.contains("params") || !doc.contains("grid") || !doc.contains("solver")) {
    throw InvalidParameter("evolve config needs 'params', 'grid' and 'solver'");
  }
  bool published = false;
  if (doc.contains("published_frame")) {
    if (!doc.at("published_frame").is_boolean()) {
      throw InvalidParameter("config key 'published_frame' must be a boolean");
    }
    published = doc.at("published_frame").get<bool>();
  }

  const json& pj = doc.at("params");
  require_known_keys(pj, {"alpha", "beta", "mu", "x1", "x2"}, "params");
  const double mu = json_number(pj, "mu", 0.0);
  if (!(mu >= 0)) throw InvalidParameter("mu must be >= 0");

  const json& gj = doc.at("grid");
  require_known_keys(gj, {"center", "length", "points"}, "grid");
  if (!gj.contains("length") || !gj.contains("points")) {
    throw InvalidParameter("grid needs 'length' and 'points'");
  }
  const Grid grid =
      make_grid(json_number(gj, "center", 0.0), json_number(gj, "length", 0.0),
                json_count(gj, "points", 0));

  std::optional<BreatherParams> params;
  SampledField v0(grid);
  if (initial == "breather") {
    params = validate_params(json_number(pj, "alpha", 0.0), json_number(pj, "beta", 0.0), mu,
                             json_number(pj, "x1", 0.0), json_number(pj, "x2", 0.0),
                             convention_for(published));
    v0 = sample_breather(*params, 0.0, grid);
  }

  const json& sj = doc.at("solver");
  require_known_keys(sj, {"dt", "t_end", "dealias_factor", "diagnostics_every"}, "solver");
  if (!sj.contains("t_end")) throw InvalidParameter("solver needs 't_end'");
  SolverConfig config;
  config.t_end = json_number(sj, "t_end", 0.0);
  config.dealias_factor = json_count(sj, "dealias_factor", config.dealias_factor);
  config.diagnostics_every = json_count(sj, "diagnostics_every", 0);
  const double stable = stable_time_step(v0, mu);
  config.dt = sj.contains("dt") ? json_number(sj, "dt", 0.0)
                                : (std::isfinite(stable) ? recommended_time_step(v0, mu) : 1e-4);
  if (config.dt > stable) {
    err << "warning: dt = " << config.dt << " exceeds the stability estimate " << stable
        << "; results may not converge\n";
  }
  const EvolutionTrace trace = evolve(v0, mu, config);

  const double l2_0 = l2_norm(v0);
  json diag = {{"initial", initial},
               {"grid", grid_json(grid)},
               {"mu", mu},
               {"dt", config.dt},
               {"t_end", config.t_end},
               {"steps", trace.steps},
               {"stable_time_step", std::isfinite(stable) ? json(stable) : json(nullptr)},
               {"step_size_warning", trace.step_size_warning},
               {"checkpoints", trace.times},
               {"mass_drift", trace.mass_drift},
               {"l2_drift", trace.l2_drift},
               {"l2_drift_relative", l2_0 > 0 ? trace.l2_drift / (l2_0 * l2_0) : 0.0}};
  if (params) {
    diag["params"] = params_json(*params);
    const SampledField exact = sample_breather(*params, trace.times.back(), grid);
    diag["closed_form_error"] =
        l2_norm(difference(trace.fields.back(), exact)) / l2_norm(exact);
  }

  if (a.out.empty()) {
    write_json(out, diag);
    return kExitOk;
  }
  fs::create_directories(a.out);
  for (std::size_t i = 0; i < trace.fields.size(); ++i) {
    std::ostringstream name;
    name << "checkpoint_" << std::setw(4) << std::setfill('0') << i << ".csv";
    std::ofstream csv(fs::path(a.out) / name.str(), std::ios::binary);
    write_field_csv(csv, trace.fields[i]);
  }
  std::ofstream js(fs::path(a.out) / "diagnostics.json", std::ios::binary);
  write_json(js, diag);
  return kExitOk;
}

// --- illposed -------------------------------------------------------------

struct IllposedArgs {
  std::string config;
  std::string out = ".";
};

int cmd_illposed(const IllposedArgs& a, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config =
      a.config.empty() ? ExperimentConfig{} : experiment_config_from_json(read_json_file(a.config));
  const ScanResult result = run_scan(config);
  fs::create_directories(a.out);
  {
    std::ofstream csv(fs::path(a.out) / "scan.csv", std::ios::binary);
    write_scan_csv(csv, result);
  }
  {
    std::ofstream js(fs::path(a.out) / "scan.json", std::ios::binary);
    write_json(js, to_json(result));
  }
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  out << "verdict: " << to_string(result.verdict) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Breathers of the fifth-order Gardner equation and the ill-posedness scan",
               "gardner5"};
  app.require_subcommand(1);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "sample a breather on a grid as CSV (x,value)");
  eval->add_option("--params", ea.params, "alpha,beta,mu[,x1,x2]")->required();
  eval->add_option("--time", ea.time, "evaluation time");
  eval->add_option("--grid", ea.grid, "center,length,points");
  eval->add_option("--form", ea.form, "rational, arctan or approx")
      ->check(CLI::IsMember({"rational", "arctan", "approx"}));
  eval->add_option("--out", ea.out, "CSV path (default stdout)");
  eval->add_flag("--published-frame", ea.published, "use the printed velocity polynomials");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "residual, mass and dual-form checks as JSON");
  verify->add_option("--params", va.params, "alpha,beta,mu[,x1,x2]")->required();
  verify->add_option("--time", va.time, "evaluation time");
  verify->add_option("--grid", va.grid, "center,length,points");
  verify->add_option("--out", va.out, "JSON path (default stdout)");
  verify->add_option("--corrupt", va.corrupt, "add eps*sech(x - center) to the samples");
  verify->add_option("--tolerance", va.tolerances, "name=value (pde, elliptic, mass, dual, mkdv5)");
  verify->add_flag("--published-frame", va.published, "use the printed velocity polynomials");

  EvolveArgs va2;
  auto* evolve_cmd = app.add_subcommand("evolve", "pseudospectral evolution from a JSON config");
  evolve_cmd->add_option("--config", va2.config, "JSON document")->required();
  evolve_cmd->add_option("--out", va2.out, "directory for checkpoint CSVs and diagnostics.json");

  IllposedArgs ia;
  auto* illposed = app.add_subcommand("illposed", "ill-posedness scan to scan.csv and scan.json");
  illposed->add_option("--config", ia.config, "JSON experiment config (default scan if omitted)");
  illposed->add_option("--out", ia.out, "output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    if (eval->parsed()) return cmd_eval(ea, out);
    if (verify->parsed()) return cmd_verify(va, out);
    if (evolve_cmd->parsed()) return cmd_evolve(va2, out, err);
    return cmd_illposed(ia, out, err);
  } catch (const BlowUpError& e) {
    err << "guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const StepSizeError& e) {
    err << "guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const DegenerateDenominator& e) {
    err << "guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace gardner5
