#include "gardner5/kernels.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace gardner5::kernels::parallel {
namespace {

struct Block {
  std::size_t begin;
  std::size_t end;
};

Block block(std::size_t b, std::size_t n) {
  return {b * n / kReductionBlocks, (b + 1) * n / kReductionBlocks};
}

// Fixed partition into kReductionBlocks, combined in order: the result is
// independent of the thread count and schedule.
template <class Body>
double blocked_sum(std::size_t n, Body body) {
  std::array<double, kReductionBlocks> partial{};
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(kReductionBlocks); ++b) {
    const Block r = block(static_cast<std::size_t>(b), n);
    double acc = 0;
    for (std::size_t j = r.begin; j < r.end; ++j) acc += body(j);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

void sample_rational(const BreatherCoefficients& k, const GridPhases& g,
                     std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < n; ++j) {
    const double u = g.offset0 + static_cast<double>(j) * g.spacing;
    out[static_cast<std::size_t>(j)] =
        rational_value(k, k.alpha * u + g.theta0, k.beta * u + g.z0);
  }
}

void sample_approx(const BreatherCoefficients& k, const GridPhases& g,
                   std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < n; ++j) {
    const double u = g.offset0 + static_cast<double>(j) * g.spacing;
    out[static_cast<std::size_t>(j)] =
        approx_value(k.beta, k.alpha * u + g.theta0, k.beta * u + g.z0);
  }
}

double sum(std::span<const double> v) {
  return blocked_sum(v.size(), [&](std::size_t j) { return v[j]; });
}

double dot(std::span<const double> a, std::span<const double> b) {
  return blocked_sum(a.size(), [&](std::size_t j) { return a[j] * b[j]; });
}

double sobolev_weighted_sum(std::span<const std::complex<double>> spectrum,
                            std::size_t n, double dxi, double s) {
  return blocked_sum(spectrum.size(), [&](std::size_t k) {
    const double xi = static_cast<double>(k) * dxi;
    const double mult = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
    return mult * std::pow(1.0 + xi * xi, s) * std::norm(spectrum[k]);
  });
}

void k_mu(std::span<const double> v, std::span<const double> vx,
          std::span<const double> vxx, double mu, std::span<double> out) {
  const double mu2 = mu * mu;
  const double mu3 = mu2 * mu;
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(i);
    const double u = v[j];
    const double ux = vx[j];
    const double uxx = vxx[j];
    out[j] = 10.0 * (mu + u) * ux * ux + 20.0 * mu * u * uxx + 10.0 * u * u * uxx +
             u * u * (60.0 * mu3 + u * (60.0 * mu2 + u * (30.0 * mu + 6.0 * u)));
  }
}

}  // namespace gardner5::kernels::parallel
