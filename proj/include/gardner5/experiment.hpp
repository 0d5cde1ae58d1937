#pragma once

// Ill-posedness harness: pairs of exact breathers with equal envelope width
// beta = alpha^{-2s} and carriers alpha1, alpha2 = alpha +/- delta/(2 alpha^{2s}).
// Their H^s distance is O(delta) at t = 0 while at a time T >> alpha^{4s-3}/delta
// the two packets have separated and the distance is O(1).

#include <string>
#include <utility>
#include <vector>

#include "gardner5/breather.hpp"
#include "gardner5/fourier.hpp"

namespace gardner5 {

struct ExperimentConfig {
  double s = 0.5;
  double delta = 0.1;
  double mu = 0.05;
  std::vector<double> alphas = {8, 16, 32, 64};
  double T_margin = 100;
  /// Window length in envelope widths 1/beta.
  double window_widths = 80;
  /// Grid points per carrier period (h <= 2 pi / (points_per_period alpha)).
  double points_per_period = 10;
  /// Upper bound on concurrently measured rows; 0 = OpenMP default.
  unsigned threads = 0;
};

/// Throws InvalidParameter for delta <= 0, mu < 0, empty alphas,
/// alpha < 8, T_margin < 10, non-positive window_widths.
void validate(const ExperimentConfig& config);

struct ExperimentRow {
  double alpha = 0;
  double alpha1 = 0;
  double alpha2 = 0;
  double beta = 0;
  double T = 0;
  double norm0_1 = 0;
  double norm0_2 = 0;
  double dist0 = 0;
  double distT = 0;
  double cross_T = 0;
  double separation_ratio = 0;

  double normT_1 = 0;
  double normT_2 = 0;
  double l2_0_1 = 0;
  double l2_T_1 = 0;
  /// sup |exact - approximate| at t = 0 divided by 2 beta.
  double approx_gap = 0;
  /// Share of the t = 0 spectral mass of v1 farther than 10 beta from alpha1.
  double leakage = 0;
  /// alpha^{2s} (alpha1 - alpha2), which equals delta by construction.
  double selection_identity = 0;
  std::size_t points = 0;
  bool separated = false;
  bool forced_common_grid = false;
};

enum class Verdict { kIllPosedSignature, kNoSignature, kNoVerdict };

std::string to_string(Verdict v);

struct ScanResult {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  Verdict verdict = Verdict::kNoVerdict;
  /// Extremes of the t = 0 H^s norms over all rows and both members.
  double norm_band_floor = 0;
  double norm_band_ceiling = 0;
  std::vector<std::string> warnings;
};

double choose_beta(double alpha, double s);
/// (alpha1, alpha2); throws InvalidParameter if alpha2 <= 0.
std::pair<double, double> choose_frequencies(double alpha, double s, double delta);
/// margin * alpha^{4s-3} / delta; throws InvalidParameter if margin < 10.
double choose_T(double alpha, double s, double delta, double margin);
/// alpha^3 (alpha1 - alpha2) T / beta^{-1}.
double separation_ratio(double alpha, double alpha1, double alpha2, double T, double beta);

/// Window of window_widths/beta around `center`, resolving carriers up to
/// alpha_max with the given points per period (power-of-two point count).
Grid experiment_grid(double center, double beta, double alpha_max, double window_widths,
                     double points_per_period);

struct InitialData {
  SampledField exact;
  SampledField approx;
  /// sup |exact - approx| / (2 beta).
  double approx_gap;
  /// beta / alpha <= 1/16.
  bool approximation_regime;
};

InitialData build_initial(double alpha_j, double beta, double mu, const Grid& grid);

/// Upper bound on |<v1, v2>_{L^2(R)}| from the envelope decay
/// |B| <= 10 beta exp(-0.95 beta |x - center|).
double tail_cross_bound(double beta, double center1, double center2);

ExperimentRow measure_pair(const ExperimentConfig& config, double alpha,
                           std::vector<std::string>* warnings = nullptr);

ScanResult run_scan(const ExperimentConfig& config);

/// Verdict reduction over measured rows (order independent).
Verdict scan_verdict(const ExperimentConfig& config, const std::vector<ExperimentRow>& rows,
                     double* floor = nullptr, double* ceiling = nullptr);

}  // namespace gardner5
