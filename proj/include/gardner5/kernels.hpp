#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference in `kernels::serial` and an OpenMP version in
// `kernels::parallel`. The unqualified entry points in `kernels` dispatch on
// problem size.
//
// Parallel reductions split the range into kReductionBlocks fixed blocks and
// combine the partial sums in block order, so results do not depend on the
// number of threads.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace gardner5::kernels {

/// Constants of the scaled rational breather form, precomputed once per
/// parameter set.
struct BreatherCoefficients {
  double alpha = 0;
  double beta = 0;
  double a = 0;  // beta sqrt(alpha^2+beta^2) / (alpha sqrt(Delta))
  double c = 0;  // 2 mu beta / Delta
  double d = 0;  // 2 mu beta / (alpha sqrt(alpha^2+beta^2) sqrt(Delta))
};

/// 2M/N as a function of the carrier phase theta = alpha*y1 and the
/// envelope argument z = beta*y2.
///
/// N and M are multiplied by exp(-2|z|) analytically, and the two O(1)
/// products in M that cancel exactly (E*(cosh - sinh) = 1) are collected
/// before evaluation, so the quotient neither overflows nor loses relative
/// accuracy in the tails.
inline double rational_value(const BreatherCoefficients& k, double theta, double z) {
  const double w = std::exp(-std::abs(z));
  const double p = w * w;
  const double ch = 0.5 * (1.0 + p);                  // cosh(z) w
  const double sh = std::copysign(0.5 * (1.0 - p), z);  // sinh(z) w
  const double e1 = z >= 0 ? 1.0 : p;                  // e^z w
  const double e2 = z >= 0 ? w : p * w;                // e^z w^2
  const double sn = std::sin(theta);
  const double cs = std::cos(theta);
  const double al = k.alpha;
  const double be = k.beta;

  const double fs = ch - k.d * (al * cs - be * sn) * w;
  const double gs = k.a * sn * w - k.c * e1;
  const double ns = fs * fs + gs * gs;
  const double ms = w * (k.a * al * cs * ch - k.a * be * sn * sh) -
                    (k.a * k.d * al * al + k.c * be) * p +
                    k.c * k.d * e2 * (2.0 * al * be * cs + (al * al - be * be) * sn);
  return 2.0 * ms / ns;
}

/// 2 beta cos(theta) sech(z).
inline double approx_value(double beta, double theta, double z) {
  return 2.0 * beta * std::cos(theta) / std::cosh(z);
}

/// Affine phase description of a breather restricted to a grid: node j has
/// offset u_j = offset0 + j*h, carrier phase alpha*u_j + theta0 and envelope
/// argument beta*u_j + z0.
struct GridPhases {
  double theta0 = 0;
  double z0 = 0;
  double offset0 = 0;
  double spacing = 0;
};

inline constexpr std::size_t kReductionBlocks = 64;
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

namespace serial {

void sample_rational(const BreatherCoefficients& k, const GridPhases& g,
                     std::span<double> out);
void sample_approx(const BreatherCoefficients& k, const GridPhases& g,
                   std::span<double> out);
double sum(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
/// sum_k m_k (1 + (k*dxi)^2)^s |V_k|^2 over a half spectrum of a length-n
/// real transform; m_k = 2 except for the zero and Nyquist bins.
double sobolev_weighted_sum(std::span<const std::complex<double>> spectrum,
                            std::size_t n, double dxi, double s);
/// 10(mu+v)v_x^2 + 20 mu v v_xx + 10 v^2 v_xx + 60mu^3 v^2 + 60 mu^2 v^3
/// + 30 mu v^4 + 6 v^5, pointwise.
void k_mu(std::span<const double> v, std::span<const double> vx,
          std::span<const double> vxx, double mu, std::span<double> out);

}  // namespace serial

namespace parallel {

void sample_rational(const BreatherCoefficients& k, const GridPhases& g,
                     std::span<double> out);
void sample_approx(const BreatherCoefficients& k, const GridPhases& g,
                   std::span<double> out);
double sum(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
double sobolev_weighted_sum(std::span<const std::complex<double>> spectrum,
                            std::size_t n, double dxi, double s);
void k_mu(std::span<const double> v, std::span<const double> vx,
          std::span<const double> vxx, double mu, std::span<double> out);

}  // namespace parallel

inline void sample_rational(const BreatherCoefficients& k, const GridPhases& g,
                            std::span<double> out) {
  if (out.size() >= kParallelThreshold) {
    parallel::sample_rational(k, g, out);
  } else {
    serial::sample_rational(k, g, out);
  }
}

inline void sample_approx(const BreatherCoefficients& k, const GridPhases& g,
                          std::span<double> out) {
  if (out.size() >= kParallelThreshold) {
    parallel::sample_approx(k, g, out);
  } else {
    serial::sample_approx(k, g, out);
  }
}

inline double sum(std::span<const double> v) {
  return v.size() >= kParallelThreshold ? parallel::sum(v) : serial::sum(v);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return a.size() >= kParallelThreshold ? parallel::dot(a, b) : serial::dot(a, b);
}

inline double sobolev_weighted_sum(std::span<const std::complex<double>> spectrum,
                                   std::size_t n, double dxi, double s) {
  return n >= kParallelThreshold ? parallel::sobolev_weighted_sum(spectrum, n, dxi, s)
                                 : serial::sobolev_weighted_sum(spectrum, n, dxi, s);
}

inline void k_mu(std::span<const double> v, std::span<const double> vx,
                 std::span<const double> vxx, double mu, std::span<double> out) {
  if (out.size() >= kParallelThreshold) {
    parallel::k_mu(v, vx, vxx, mu, out);
  } else {
    serial::k_mu(v, vx, vxx, mu, out);
  }
}

}  // namespace gardner5::kernels
