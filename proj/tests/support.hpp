#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "gardner5/breather.hpp"
#include "gardner5/fourier.hpp"

namespace support {

struct Tuple {
  double alpha, beta, mu, x1, x2, t;
};

/// Random valid parameter tuples with alpha in [0.5, 3], beta in [0.5, 2]
/// and mu chosen so that Delta >= (alpha^2 + beta^2) / 4.
inline std::vector<Tuple> random_tuples(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(0.5, 3.0), ub(0.5, 2.0), unit(0.0, 1.0),
      shift(-2.0, 2.0), time(-0.05, 0.05);
  std::vector<Tuple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = ua(rng);
    const double b = ub(rng);
    const double mu_max = std::sqrt(3.0 * (a * a + b * b) / 16.0);
    out.push_back({a, b, mu_max * unit(rng), shift(rng), shift(rng), time(rng)});
  }
  return out;
}

/// Window around the envelope wide enough for the arctan route
/// (exp(-beta L/2) < 1e-15) and fine enough to resolve carrier plus the
/// exponentially small spectral tail (xi_max >= alpha + 60 beta).
inline gardner5::Grid breather_grid(const gardner5::BreatherParams& p, double t) {
  const double length = 72.0 / p.beta();
  const double xi_needed = p.alpha() + 60.0 * p.beta();
  std::size_t points = 64;
  while (std::numbers::pi * static_cast<double>(points) / length < xi_needed) points *= 2;
  return gardner5::make_grid(gardner5::envelope_center(p, t), length, points);
}

inline double sup(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double sup_gap(const gardner5::SampledField& a, const gardner5::SampledField& b) {
  double m = 0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.values[j] - b.values[j]));
  return m;
}

}  // namespace support
