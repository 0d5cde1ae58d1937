#include "gardner5/kernels.hpp"

#include <cmath>

namespace gardner5::kernels::serial {

void sample_rational(const BreatherCoefficients& k, const GridPhases& g,
                     std::span<double> out) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double u = g.offset0 + static_cast<double>(j) * g.spacing;
    out[j] = rational_value(k, k.alpha * u + g.theta0, k.beta * u + g.z0);
  }
}

void sample_approx(const BreatherCoefficients& k, const GridPhases& g,
                   std::span<double> out) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double u = g.offset0 + static_cast<double>(j) * g.spacing;
    out[j] = approx_value(k.beta, k.alpha * u + g.theta0, k.beta * u + g.z0);
  }
}

double sum(std::span<const double> v) {
  double acc = 0;
  for (double x : v) acc += x;
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * b[j];
  return acc;
}

double sobolev_weighted_sum(std::span<const std::complex<double>> spectrum,
                            std::size_t n, double dxi, double s) {
  double acc = 0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double xi = static_cast<double>(k) * dxi;
    const double mult = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
    acc += mult * std::pow(1.0 + xi * xi, s) * std::norm(spectrum[k]);
  }
  return acc;
}

void k_mu(std::span<const double> v, std::span<const double> vx,
          std::span<const double> vxx, double mu, std::span<double> out) {
  const double mu2 = mu * mu;
  const double mu3 = mu2 * mu;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double u = v[j];
    const double ux = vx[j];
    const double uxx = vxx[j];
    out[j] = 10.0 * (mu + u) * ux * ux + 20.0 * mu * u * uxx + 10.0 * u * u * uxx +
             u * u * (60.0 * mu3 + u * (60.0 * mu2 + u * (30.0 * mu + 6.0 * u)));
  }
}

}  // namespace gardner5::kernels::serial
