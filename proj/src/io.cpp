#include "gardner5/io.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "gardner5/errors.hpp"

namespace gardner5 {
namespace {

double number(const nlohmann::json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number()) throw InvalidParameter(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

void write_field_csv(std::ostream& out, const SampledField& field) {
  out << "x,value\n";
  for (std::size_t j = 0; j < field.size(); ++j) {
    out << format_double(field.grid.node(j)) << ',' << format_double(field.values[j]) << '\n';
  }
}

void write_scan_csv(std::ostream& out, const ScanResult& result) {
  out << kScanCsvHeader << '\n';
  for (const auto& r : result.rows) {
    const double cols[] = {r.alpha,   r.alpha1,  r.alpha2, r.beta,  r.T,       r.norm0_1,
                           r.norm0_2, r.dist0,   r.distT,  r.cross_T, r.separation_ratio};
    for (std::size_t i = 0; i < std::size(cols); ++i) {
      if (i > 0) out << ',';
      out << format_double(cols[i]);
    }
    out << '\n';
  }
}

nlohmann::json to_json(const ResidualReport& r) {
  return {{"sup_abs", r.sup_abs},
          {"l2_abs", r.l2_abs},
          {"sup_rel", r.sup_rel},
          {"terms_scale", r.terms_scale}};
}

nlohmann::json to_json(const ExperimentConfig& c) {
  return {{"s", c.s},
          {"delta", c.delta},
          {"mu", c.mu},
          {"alphas", c.alphas},
          {"T_margin", c.T_margin},
          {"window_widths", c.window_widths},
          {"points_per_period", c.points_per_period},
          {"threads", c.threads}};
}

nlohmann::json to_json(const ExperimentRow& r) {
  return {{"alpha", r.alpha},
          {"alpha1", r.alpha1},
          {"alpha2", r.alpha2},
          {"beta", r.beta},
          {"T", r.T},
          {"norm0_1", r.norm0_1},
          {"norm0_2", r.norm0_2},
          {"dist0", r.dist0},
          {"distT", r.distT},
          {"cross_T", r.cross_T},
          {"separation_ratio", r.separation_ratio},
          {"normT_1", r.normT_1},
          {"normT_2", r.normT_2},
          {"l2_0_1", r.l2_0_1},
          {"l2_T_1", r.l2_T_1},
          {"approx_gap", r.approx_gap},
          {"leakage", r.leakage},
          {"selection_identity", r.selection_identity},
          {"points", r.points},
          {"separated", r.separated},
          {"forced_common_grid", r.forced_common_grid}};
}

nlohmann::json to_json(const ScanResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.rows) rows.push_back(to_json(r));
  return {{"config", to_json(result.config)},
          {"rows", rows},
          {"verdict", to_string(result.verdict)},
          {"norm_band_floor", result.norm_band_floor},
          {"norm_band_ceiling", result.norm_band_ceiling},
          {"warnings", result.warnings}};
}

void require_known_keys(const nlohmann::json& object,
                        std::initializer_list<std::string_view> allowed,
                        std::string_view context) {
  if (!object.is_object()) {
    throw InvalidParameter(std::string(context) + " must be a JSON object");
  }
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidParameter("unknown key '" + key + "' in " + std::string(context));
    }
  }
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
  require_known_keys(doc,
                     {"s", "delta", "mu", "alphas", "T_margin", "window_widths",
                      "points_per_period", "threads"},
                     "experiment config");
  ExperimentConfig c;
  c.s = number(doc, "s", c.s);
  c.delta = number(doc, "delta", c.delta);
  c.mu = number(doc, "mu", c.mu);
  c.T_margin = number(doc, "T_margin", c.T_margin);
  c.window_widths = number(doc, "window_widths", c.window_widths);
  c.points_per_period = number(doc, "points_per_period", c.points_per_period);
  if (doc.contains("alphas")) {
    const auto& a = doc.at("alphas");
    if (!a.is_array()) throw InvalidParameter("config key 'alphas' must be an array");
    c.alphas.clear();
    for (const auto& v : a) {
      if (!v.is_number()) throw InvalidParameter("config key 'alphas' must hold numbers");
      c.alphas.push_back(v.get<double>());
    }
  }
  if (doc.contains("threads")) {
    const auto& t = doc.at("threads");
    if (!t.is_number_unsigned()) {
      throw InvalidParameter("config key 'threads' must be a non-negative integer");
    }
    c.threads = t.get<unsigned>();
  }
  validate(c);
  return c;
}

}  // namespace gardner5
