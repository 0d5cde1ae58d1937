#pragma once

// Uniform periodic grids and discrete Fourier calculus with continuum
// normalization: quadratures approximate integrals over the real line, and
// spectral sums approximate (1/2pi) * integral over frequency.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace gardner5 {

/// Uniform sampling of the window [center - L/2, center + L/2).
///
/// Nodes are stored relative to the window center. Breathers are evaluated
/// at |x| up to ~1e9 where adding x_j = center + offset in double precision
/// would inject per-node rounding noise into the carrier phase; keeping the
/// offset separate avoids that.
class Grid {
 public:
  Grid(double center, double length, std::size_t points);

  double center() const { return center_; }
  double length() const { return length_; }
  std::size_t points() const { return points_; }
  double spacing() const { return length_ / static_cast<double>(points_); }
  double lower() const { return center_ - 0.5 * length_; }
  double upper() const { return center_ + 0.5 * length_; }

  /// Offset of node j from the window center: -L/2 + j*h.
  double offset(std::size_t j) const {
    return -0.5 * length_ + static_cast<double>(j) * spacing();
  }
  /// Absolute node position (loses precision for huge centers; see offset).
  double node(std::size_t j) const { return center_ + offset(j); }

  /// Angular frequency of FFT bin k in [0, N): 2*pi*k/L with k wrapped to
  /// the signed range [-N/2, N/2).
  double frequency(std::size_t k) const;
  /// Largest resolved angular frequency pi*N/L.
  double max_frequency() const;

  bool operator==(const Grid&) const = default;

 private:
  double center_;
  double length_;
  std::size_t points_;
};

/// Validated constructor: length > 0, points even and >= 16.
Grid make_grid(double center, double length, std::size_t points);

/// Real samples of a function on a Grid.
struct SampledField {
  Grid grid;
  std::vector<double> values;

  SampledField(Grid g, std::vector<double> v);
  explicit SampledField(Grid g);

  std::size_t size() const { return values.size(); }
};

/// Sobolev regularity index s.
struct SobolevIndex {
  double s;
  explicit constexpr SobolevIndex(double value) : s(value) {}
};

/// How `derivative` should validate that the periodic extension is smooth.
enum class Periodicity {
  /// Field decays at its window edges (localized data on a wide window).
  kDecayed,
  /// Field is periodic on the window by construction (trig polynomials).
  kPeriodic,
};

/// Largest edge_ratio for which a field counts as decayed.
inline constexpr double kEdgeTolerance = 1e-12;

/// Edge magnitude max(|v_0|, |v_{N-1}|) divided by max|v| (0 for v = 0).
double edge_ratio(const SampledField& field);

/// Spectral derivative of order 1..5.
///
/// With Periodicity::kDecayed the field must satisfy
/// edge_ratio(field) <= kEdgeTolerance, otherwise EdgeDecayError is thrown.
SampledField derivative(const SampledField& field, int order,
                        Periodicity periodicity = Periodicity::kDecayed);

/// Discrete H^s norm (int (1+xi^2)^s |v^(xi)|^2 dxi / 2pi)^(1/2).
double sobolev_norm(const SampledField& field, SobolevIndex s);

/// Fraction of the spectral L^2 mass at frequencies with ||xi| - center| >
/// radius. Used to check that a modulated packet concentrates within radius
/// of its carrier.
double spectral_leakage(const SampledField& field, double center, double radius);

/// h * sum v_j^2, square-rooted.
double l2_norm(const SampledField& field);

/// h * sum a_j b_j; the grids must be identical.
double inner_product(const SampledField& a, const SampledField& b);

/// Integral of the field, h * sum v_j.
double mean(const SampledField& field);

/// Pointwise a - b on identical grids.
SampledField difference(const SampledField& a, const SampledField& b);

/// Fraction of the shorter window covered by the intersection of both.
double window_overlap(const Grid& a, const Grid& b);

/// Samples both fields on a caller-chosen common grid; used when windows
/// overlap too much for zero-extension.
using PairResampler =
    std::function<std::pair<SampledField, SampledField>(const Grid&)>;

/// H^s distance between two localized fields living on their own windows.
///
///  - identical grids: direct H^s norm of a - b;
///  - disjoint windows: Pythagoras, sqrt(|a|^2 + |b|^2);
///  - overlap <= 50% with node-aligned grids of equal spacing: zero-extend
///    both onto the union grid;
///  - anything else: the resampler is asked for both fields on a common
///    covering grid. Without a resampler WindowOverlapError is thrown.
double window_union_distance(const SampledField& a, const SampledField& b,
                             SobolevIndex s,
                             const PairResampler& resampler = {});

/// h * sum a_j b_j over nodes shared by both windows; 0 when disjoint.
/// Grids must have equal spacing and aligned nodes when they overlap.
double overlap_inner_product(const SampledField& a, const SampledField& b);

/// Smallest grid covering both windows with the finer of the two spacings.
Grid covering_grid(const Grid& a, const Grid& b);

}  // namespace gardner5
