#include "gardner5/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include "gardner5/errors.hpp"
#include "gardner5/fft.hpp"
#include "gardner5/kernels.hpp"

namespace gardner5 {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAlignmentTolerance = 1e-6;

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) {
    throw GridMismatch(std::string(what) + ": fields live on different grids");
  }
}

// Index offset of grid b's first node relative to grid a's first node, when
// both have the same spacing and b's nodes fall on a's lattice.
bool aligned_offset(const Grid& a, const Grid& b, long long& shift) {
  const double ha = a.spacing();
  if (std::abs(ha - b.spacing()) > 1e-12 * ha) return false;
  const double steps = (b.lower() - a.lower()) / ha;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > kAlignmentTolerance) return false;
  shift = static_cast<long long>(rounded);
  return true;
}

SampledField zero_extend(const SampledField& f, const Grid& target, long long shift) {
  SampledField out(target);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const long long t = static_cast<long long>(j) + shift;
    if (t >= 0 && t < static_cast<long long>(target.points())) {
      out.values[static_cast<std::size_t>(t)] = f.values[j];
    }
  }
  return out;
}

}  // namespace

Grid::Grid(double center, double length, std::size_t points)
    : center_(center), length_(length), points_(points) {}

double Grid::frequency(std::size_t k) const {
  const auto n = static_cast<long long>(points_);
  long long signed_k = static_cast<long long>(k);
  if (signed_k >= n / 2) signed_k -= n;
  return kTwoPi * static_cast<double>(signed_k) / length_;
}

double Grid::max_frequency() const {
  return std::numbers::pi * static_cast<double>(points_) / length_;
}

Grid make_grid(double center, double length, std::size_t points) {
  if (!std::isfinite(center)) throw InvalidParameter("grid center must be finite");
  if (!(length > 0) || !std::isfinite(length)) {
    std::ostringstream msg;
    msg << "grid length must be positive (got " << length << ")";
    throw InvalidParameter(msg.str());
  }
  if (points < 16 || points % 2 != 0) {
    std::ostringstream msg;
    msg << "grid point count must be even and >= 16 (got " << points << ")";
    throw InvalidParameter(msg.str());
  }
  return Grid(center, length, points);
}

SampledField::SampledField(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.points()) {
    throw GridMismatch("sample count does not match grid point count");
  }
}

SampledField::SampledField(Grid g) : grid(g), values(g.points(), 0.0) {}

double edge_ratio(const SampledField& field) {
  double peak = 0;
  for (double v : field.values) peak = std::max(peak, std::abs(v));
  if (peak == 0) return 0;
  const double edge = std::max(std::abs(field.values.front()), std::abs(field.values.back()));
  return edge / peak;
}

SampledField derivative(const SampledField& field, int order, Periodicity periodicity) {
  if (order < 1 || order > 5) {
    throw InvalidParameter("derivative order must be in 1..5");
  }
  if (periodicity == Periodicity::kDecayed) {
    const double ratio = edge_ratio(field);
    if (ratio > kEdgeTolerance) {
      std::ostringstream msg;
      msg << "field is not decayed at its window edges (edge/max = " << ratio
          << " > " << kEdgeTolerance << "); widen the window";
      throw EdgeDecayError(msg.str());
    }
  }
  const std::size_t n = field.size();
  RealFft fft(n);
  auto spec = fft.forward(field.values);
  const double dxi = kTwoPi / field.grid.length();
  const std::complex<double> i_unit(0.0, 1.0);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (2 * k == n) {
      // Nyquist bin: (i xi)^order is imaginary for odd orders and the bin
      // has no partner to cancel it, so it is dropped.
      if (order % 2 == 1) {
        spec[k] = 0;
        continue;
      }
    }
    const double xi = static_cast<double>(k) * dxi;
    spec[k] *= std::pow(i_unit * xi, order);
  }
  SampledField out(field.grid);
  fft.backward(spec, out.values);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : out.values) v *= inv_n;
  return out;
}

double sobolev_norm(const SampledField& field, SobolevIndex s) {
  const std::size_t n = field.size();
  RealFft fft(n);
  const auto spec = fft.forward(field.values);
  const double h = field.grid.spacing();
  const double dxi = kTwoPi / field.grid.length();
  const double weighted = kernels::sobolev_weighted_sum(spec, n, dxi, s.s);
  return std::sqrt(h / static_cast<double>(n) * weighted);
}

double spectral_leakage(const SampledField& field, double center, double radius) {
  const std::size_t n = field.size();
  RealFft fft(n);
  const auto spec = fft.forward(field.values);
  const double dxi = kTwoPi / field.grid.length();
  double total = 0;
  double outside = 0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double w = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
    const double e = w * std::norm(spec[k]);
    total += e;
    if (std::abs(static_cast<double>(k) * dxi - center) > radius) outside += e;
  }
  return total > 0 ? outside / total : 0.0;
}

double l2_norm(const SampledField& field) {
  return std::sqrt(field.grid.spacing() * kernels::dot(field.values, field.values));
}

double inner_product(const SampledField& a, const SampledField& b) {
  require_same_grid(a.grid, b.grid, "inner_product");
  return a.grid.spacing() * kernels::dot(a.values, b.values);
}

double mean(const SampledField& field) {
  return field.grid.spacing() * kernels::sum(field.values);
}

SampledField difference(const SampledField& a, const SampledField& b) {
  require_same_grid(a.grid, b.grid, "difference");
  SampledField out(a.grid);
  for (std::size_t j = 0; j < a.size(); ++j) out.values[j] = a.values[j] - b.values[j];
  return out;
}

double window_overlap(const Grid& a, const Grid& b) {
  const double lo = std::max(a.lower(), b.lower());
  const double hi = std::min(a.upper(), b.upper());
  if (hi <= lo) return 0.0;
  return (hi - lo) / std::min(a.length(), b.length());
}

Grid covering_grid(const Grid& a, const Grid& b) {
  const double h = std::min(a.spacing(), b.spacing());
  const double lo = std::min(a.lower(), b.lower());
  const double hi = std::max(a.upper(), b.upper());
  auto points = static_cast<std::size_t>(std::ceil((hi - lo) / h - 1e-9));
  points = std::max<std::size_t>(points + (points % 2), 16);
  const double length = static_cast<double>(points) * h;
  return make_grid(lo + 0.5 * length, length, points);
}

double window_union_distance(const SampledField& a, const SampledField& b, SobolevIndex s,
                             const PairResampler& resampler) {
  if (a.grid == b.grid) return sobolev_norm(difference(a, b), s);

  const double overlap = window_overlap(a.grid, b.grid);
  if (overlap == 0.0) {
    const double na = sobolev_norm(a, s);
    const double nb = sobolev_norm(b, s);
    return std::sqrt(na * na + nb * nb);
  }

  long long shift = 0;
  if (overlap <= 0.5 && aligned_offset(a.grid, b.grid, shift)) {
    const Grid cover = covering_grid(a.grid, b.grid);
    long long shift_a = 0;
    long long shift_b = 0;
    if (aligned_offset(cover, a.grid, shift_a) && aligned_offset(cover, b.grid, shift_b)) {
      return sobolev_norm(difference(zero_extend(a, cover, shift_a), zero_extend(b, cover, shift_b)),
                          s);
    }
  }

  if (!resampler) {
    std::ostringstream msg;
    msg << "windows overlap by " << overlap * 100.0
        << "% and cannot be zero-extended; a common-grid resampler is required";
    throw WindowOverlapError(msg.str());
  }
  const Grid cover = covering_grid(a.grid, b.grid);
  const auto [ra, rb] = resampler(cover);
  return sobolev_norm(difference(ra, rb), s);
}

double overlap_inner_product(const SampledField& a, const SampledField& b) {
  if (window_overlap(a.grid, b.grid) == 0.0) return 0.0;
  long long shift = 0;
  if (!aligned_offset(a.grid, b.grid, shift)) {
    throw GridMismatch("overlap_inner_product: grids are not node-aligned");
  }
  double acc = 0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const long long ia = static_cast<long long>(j) + shift;
    if (ia >= 0 && ia < static_cast<long long>(a.size())) {
      acc += a.values[static_cast<std::size_t>(ia)] * b.values[j];
    }
  }
  return a.grid.spacing() * acc;
}

}  // namespace gardner5
