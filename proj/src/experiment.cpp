#include "gardner5/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include "gardner5/errors.hpp"

namespace gardner5 {
namespace {

constexpr double kEnvelopeAmplitude = 10.0;
constexpr double kEnvelopeRateSlack = 0.05;
constexpr double kSeparationThreshold = 10.0;
constexpr double kWallOfWellPosedness = 0.75;
constexpr double kLeakageRadius = 10.0;  // in units of beta
constexpr double kLeakageTolerance = 1e-8;

unsigned scan_threads(const ExperimentConfig& config, std::size_t rows) {
  unsigned threads = config.threads;
  if (threads == 0) {
    if (const char* env = std::getenv("GARDNER5_THREADS")) {
      threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
  }
  if (threads == 0) threads = static_cast<unsigned>(omp_get_max_threads());
  return std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows)));
}

double sup_gap(const SampledField& a, const SampledField& b) {
  double m = 0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.values[j] - b.values[j]));
  return m;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kIllPosedSignature:
      return "ILL_POSED_SIGNATURE";
    case Verdict::kNoSignature:
      return "NO_SIGNATURE";
    case Verdict::kNoVerdict:
      return "NO_VERDICT";
  }
  return "NO_VERDICT";
}

void validate(const ExperimentConfig& c) {
  if (!std::isfinite(c.s)) throw InvalidParameter("s must be finite");
  if (!(c.delta > 0)) throw InvalidParameter("delta must be > 0");
  if (!(c.mu >= 0)) throw InvalidParameter("mu must be >= 0");
  if (c.alphas.empty()) throw InvalidParameter("alphas must be nonempty");
  for (double a : c.alphas) {
    if (!(a >= 8)) throw InvalidParameter("every alpha must be >= 8");
  }
  if (!(c.T_margin >= 10)) throw InvalidParameter("T_margin must be >= 10");
  if (!(c.window_widths > 0)) throw InvalidParameter("window_widths must be > 0");
  if (!(c.points_per_period >= 4)) throw InvalidParameter("points_per_period must be >= 4");
}

double choose_beta(double alpha, double s) {
  if (!(alpha > 0)) throw InvalidParameter("alpha must be > 0");
  return std::pow(alpha, -2.0 * s);
}

std::pair<double, double> choose_frequencies(double alpha, double s, double delta) {
  if (!(alpha > 0)) throw InvalidParameter("alpha must be > 0");
  if (!(delta >= 0)) throw InvalidParameter("delta must be >= 0");
  const double half_gap = delta / (2.0 * std::pow(alpha, 2.0 * s));
  const double alpha2 = alpha - half_gap;
  if (!(alpha2 > 0)) throw InvalidParameter("alpha2 = alpha - delta/(2 alpha^{2s}) must be > 0");
  return {alpha + half_gap, alpha2};
}

double choose_T(double alpha, double s, double delta, double margin) {
  if (!(margin >= 10)) throw InvalidParameter("T margin must be >= 10");
  if (!(delta > 0)) throw InvalidParameter("delta must be > 0");
  return margin * std::pow(alpha, 4.0 * s - 3.0) / delta;
}

double separation_ratio(double alpha, double alpha1, double alpha2, double T, double beta) {
  return alpha * alpha * alpha * (alpha1 - alpha2) * T * beta;
}

Grid experiment_grid(double center, double beta, double alpha_max, double window_widths,
                     double points_per_period) {
  const double length = window_widths / beta;
  const double max_spacing = 2.0 * std::numbers::pi / (points_per_period * alpha_max);
  std::size_t points = 16;
  while (length / static_cast<double>(points) > max_spacing) points *= 2;
  return make_grid(center, length, points);
}

InitialData build_initial(double alpha_j, double beta, double mu, const Grid& grid) {
  const BreatherParams p = validate_params(alpha_j, beta, mu);
  SampledField exact = sample_breather(p, 0.0, grid);
  SampledField approx = sample_approx(p, 0.0, grid);
  const double gap = sup_gap(exact, approx) / (2.0 * beta);
  return {std::move(exact), std::move(approx), gap, beta / alpha_j <= 1.0 / 16.0};
}

double tail_cross_bound(double beta, double center1, double center2) {
  const double rate = beta * (1.0 - kEnvelopeRateSlack);
  const double d = std::abs(center1 - center2);
  const double amp = kEnvelopeAmplitude * beta;
  // int exp(-r|x-c1|) exp(-r|x-c2|) dx = (d + 1/r) exp(-r d)
  return amp * amp * (d + 1.0 / rate) * std::exp(-rate * d);
}

ExperimentRow measure_pair(const ExperimentConfig& config, double alpha,
                           std::vector<std::string>* warnings) {
  const SobolevIndex s(config.s);
  ExperimentRow row;
  row.alpha = alpha;
  row.beta = choose_beta(alpha, config.s);
  std::tie(row.alpha1, row.alpha2) = choose_frequencies(alpha, config.s, config.delta);
  row.T = choose_T(alpha, config.s, config.delta, config.T_margin);
  row.separation_ratio = separation_ratio(alpha, row.alpha1, row.alpha2, row.T, row.beta);
  row.separated = row.separation_ratio >= kSeparationThreshold;
  row.selection_identity = std::pow(alpha, 2.0 * config.s) * (row.alpha1 - row.alpha2);

  const BreatherParams p1 = validate_params(row.alpha1, row.beta, config.mu);
  const BreatherParams p2 = validate_params(row.alpha2, row.beta, config.mu);
  const double alpha_max = std::max(row.alpha1, row.alpha2);

  // t = 0: both packets share the envelope center.
  const Grid grid0 = experiment_grid(envelope_center(p1, 0.0), row.beta, alpha_max,
                                     config.window_widths, config.points_per_period);
  row.points = grid0.points();
  {
    const InitialData first = build_initial(row.alpha1, row.beta, config.mu, grid0);
    const SampledField second = sample_breather(p2, 0.0, grid0);
    row.norm0_1 = sobolev_norm(first.exact, s);
    row.norm0_2 = sobolev_norm(second, s);
    row.dist0 = sobolev_norm(difference(first.exact, second), s);
    row.l2_0_1 = l2_norm(first.exact);
    row.approx_gap = first.approx_gap;
    row.leakage = spectral_leakage(first.exact, row.alpha1, kLeakageRadius * row.beta);
  }
  if (row.leakage > kLeakageTolerance && warnings != nullptr) {
    std::ostringstream msg;
    msg << "alpha=" << alpha << ": spectral mass outside alpha1 +/- 10 beta is " << row.leakage
        << " (> " << kLeakageTolerance << ")";
    warnings->push_back(msg.str());
  }

  // t = T: one window per packet, centered where its envelope has travelled.
  const double c1 = envelope_center(p1, row.T);
  const double c2 = envelope_center(p2, row.T);
  const Grid grid1 = experiment_grid(c1, row.beta, alpha_max, config.window_widths,
                                     config.points_per_period);
  const Grid grid2 = experiment_grid(c2, row.beta, alpha_max, config.window_widths,
                                     config.points_per_period);
  const SampledField v1 = sample_breather(p1, row.T, grid1);
  const SampledField v2 = sample_breather(p2, row.T, grid2);
  row.normT_1 = sobolev_norm(v1, s);
  row.normT_2 = sobolev_norm(v2, s);
  row.l2_T_1 = l2_norm(v1);

  bool forced = false;
  const PairResampler resample = [&](const Grid& cover) {
    forced = true;
    return std::make_pair(sample_breather(p1, row.T, cover), sample_breather(p2, row.T, cover));
  };
  row.distT = window_union_distance(v1, v2, s, resample);
  row.forced_common_grid = forced;
  if (forced && warnings != nullptr) {
    std::ostringstream msg;
    msg << "alpha=" << alpha << ": windows at T overlap ("
        << window_overlap(grid1, grid2) * 100.0
        << "%); distance recomputed on a common grid";
    warnings->push_back(msg.str());
  }

  double windowed = 0;
  if (window_overlap(grid1, grid2) > 0) {
    windowed = inner_product(sample_breather(p1, row.T, covering_grid(grid1, grid2)),
                             sample_breather(p2, row.T, covering_grid(grid1, grid2)));
  }
  row.cross_T = std::abs(windowed) + tail_cross_bound(row.beta, c1, c2);
  return row;
}

Verdict scan_verdict(const ExperimentConfig& config, const std::vector<ExperimentRow>& rows,
                     double* floor_out, double* ceiling_out) {
  double floor = std::numeric_limits<double>::infinity();
  double ceiling = 0;
  for (const auto& r : rows) {
    floor = std::min({floor, r.norm0_1, r.norm0_2});
    ceiling = std::max({ceiling, r.norm0_1, r.norm0_2});
  }
  if (floor_out != nullptr) *floor_out = rows.empty() ? 0.0 : floor;
  if (ceiling_out != nullptr) *ceiling_out = ceiling;

  if (config.s >= kWallOfWellPosedness || rows.empty()) return Verdict::kNoVerdict;

  bool any_separated = false;
  bool ok = ceiling <= 2.0 * floor;  // (a) norms stay in a factor-2 band
  for (const auto& r : rows) {
    ok = ok && r.dist0 <= 2.0 * config.delta * ceiling;  // (b) close data
    if (r.separated) {
      any_separated = true;
      ok = ok && r.distT >= 0.5 * floor;  // (c) far-apart solutions
    }
  }
  return ok && any_separated ? Verdict::kIllPosedSignature : Verdict::kNoSignature;
}

ScanResult run_scan(const ExperimentConfig& config) {
  validate(config);
  ScanResult result;
  result.config = config;
  std::vector<double> alphas = config.alphas;
  std::sort(alphas.begin(), alphas.end());

  const std::size_t n = alphas.size();
  std::vector<ExperimentRow> rows(n);
  std::vector<std::vector<std::string>> row_warnings(n);
  std::vector<std::exception_ptr> errors(n);
  const unsigned threads = scan_threads(config, n);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    const auto j = static_cast<std::size_t>(i);
    try {
      rows[j] = measure_pair(config, alphas[j], &row_warnings[j]);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& w : row_warnings) {
    result.warnings.insert(result.warnings.end(), w.begin(), w.end());
  }
  result.rows = std::move(rows);
  result.verdict =
      scan_verdict(config, result.rows, &result.norm_band_floor, &result.norm_band_ceiling);
  return result;
}

}  // namespace gardner5
