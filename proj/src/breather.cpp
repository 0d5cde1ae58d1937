#include "gardner5/breather.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "gardner5/errors.hpp"

namespace gardner5 {
namespace {

constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;
constexpr double kArctanEdgeDecay = 1e-14;

struct PhaseOrigin {
  double theta;
  double z;
};

// Carrier phase alpha*y1 (reduced mod 2pi) and envelope argument beta*y2 at
// x_ref. Accumulated in long double: x_ref and delta5*t reach 1e9 in the
// ill-posedness scan, where double rounding of y1 alone shifts the carrier by
// ~1e-5 rad.
PhaseOrigin phase_origin(const BreatherParams& p, double t, double x_ref) {
  const Velocities v = phase_velocities(p);
  const long double y1 = static_cast<long double>(x_ref) +
                         static_cast<long double>(v.delta5) * t + p.x1();
  const long double y2 = static_cast<long double>(x_ref) +
                         static_cast<long double>(v.gamma5) * t + p.x2();
  const long double theta = std::fmod(static_cast<long double>(p.alpha()) * y1, kTwoPiL);
  return {static_cast<double>(theta), static_cast<double>(p.beta() * y2)};
}

// G and F multiplied by exp(-|z|).
void gf_scaled(const kernels::BreatherCoefficients& k, double theta, double z, double& g,
               double& f) {
  const double w = std::exp(-std::abs(z));
  const double p = w * w;
  const double ch = 0.5 * (1.0 + p);
  const double e1 = z >= 0 ? 1.0 : p;
  const double sn = std::sin(theta);
  const double cs = std::cos(theta);
  g = k.a * sn * w - k.c * e1;
  f = ch - k.d * (k.alpha * cs - k.beta * sn) * w;
}

std::string describe(const char* constraint, double value) {
  std::ostringstream msg;
  msg << constraint << " (got " << value << ")";
  return msg.str();
}

}  // namespace

BreatherParams validate_params(double alpha, double beta, double mu, double x1, double x2,
                               PhaseConvention convention) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(mu) ||
      !std::isfinite(x1) || !std::isfinite(x2)) {
    throw InvalidParameter("breather parameters must be finite");
  }
  if (!(alpha > 0)) throw InvalidParameter(describe("alpha must be > 0", alpha));
  if (!(beta > 0)) throw InvalidParameter(describe("beta must be > 0", beta));
  if (mu < 0) throw InvalidParameter(describe("mu must be >= 0", mu));
  const double delta = alpha * alpha + beta * beta - 4.0 * mu * mu;
  if (!(delta > 0)) {
    throw InvalidParameter(describe("Delta = alpha^2 + beta^2 - 4 mu^2 must be > 0", delta));
  }
  BreatherParams p;
  p.alpha_ = alpha;
  p.beta_ = beta;
  p.mu_ = mu;
  p.x1_ = x1;
  p.x2_ = x2;
  p.discriminant_ = delta;
  p.convention_ = convention;
  return p;
}

BreatherParams BreatherParams::shifted(double c) const {
  return validate_params(alpha_, beta_, mu_, x1_ + c, x2_ + c, convention_);
}

BreatherParams BreatherParams::with_convention(PhaseConvention convention) const {
  BreatherParams p = *this;
  p.convention_ = convention;
  return p;
}

Velocities velocities(const BreatherParams& params) {
  const double a2 = params.alpha() * params.alpha();
  const double b2 = params.beta() * params.beta();
  const double m2 = params.mu() * params.mu();
  return {
      -a2 * a2 + 10.0 * a2 * b2 - 5.0 * b2 * b2 + 10.0 * (a2 - 3.0 * b2) * m2 - 30.0 * m2 * m2,
      -b2 * b2 + 10.0 * a2 * b2 - 5.0 * a2 * a2 + 10.0 * (3.0 * a2 - b2) * m2 - 30.0 * m2 * m2,
  };
}

double galilean_shift(double mu) {
  const double m2 = mu * mu;
  return 30.0 * m2 * m2;
}

Velocities phase_velocities(const BreatherParams& params) {
  Velocities v = velocities(params);
  if (params.convention() == PhaseConvention::kGardner) {
    const double shift = galilean_shift(params.mu());
    v.delta5 += shift;
    v.gamma5 += shift;
  }
  return v;
}

kernels::BreatherCoefficients coefficients(const BreatherParams& p) {
  const double r = std::hypot(p.alpha(), p.beta());
  const double sd = std::sqrt(p.discriminant());
  kernels::BreatherCoefficients k;
  k.alpha = p.alpha();
  k.beta = p.beta();
  k.a = p.beta() * r / (p.alpha() * sd);
  k.c = 2.0 * p.mu() * p.beta() / p.discriminant();
  k.d = 2.0 * p.mu() * p.beta() / (p.alpha() * r * sd);
  return k;
}

kernels::GridPhases grid_phases(const BreatherParams& params, double t, const Grid& grid) {
  const PhaseOrigin o = phase_origin(params, t, grid.center());
  return {o.theta, o.z, grid.offset(0), grid.spacing()};
}

GFValue eval_GF(const BreatherParams& params, double t, double x) {
  const PhaseOrigin o = phase_origin(params, t, x);
  const auto k = coefficients(params);
  if (std::abs(o.z) > kHyperbolicOverflow) {
    GFValue v{0, 0, std::abs(o.z)};
    gf_scaled(k, o.theta, o.z, v.g, v.f);
    return v;
  }
  const double e = std::exp(o.z);
  const double sn = std::sin(o.theta);
  const double cs = std::cos(o.theta);
  return {k.a * sn - k.c * e,
          std::cosh(o.z) - k.d * (params.alpha() * cs - params.beta() * sn), 0.0};
}

double eval_rational(const BreatherParams& params, double t, double x) {
  const PhaseOrigin o = phase_origin(params, t, x);
  const double value = kernels::rational_value(coefficients(params), o.theta, o.z);
  if (!std::isfinite(value)) {
    throw DegenerateDenominator("rational breather denominator N vanished; parameters outside "
                                "the admissible range");
  }
  return value;
}

double envelope_edge_decay(const BreatherParams& params, double t, const Grid& grid) {
  const double center = envelope_center(params, t);
  const double distance = std::min(center - grid.lower(), grid.upper() - center);
  if (distance <= 0) return 1.0;
  return std::exp(-params.beta() * distance);
}

SampledField eval_arctan_derivative(const BreatherParams& params, double t, const Grid& grid) {
  const double decay = envelope_edge_decay(params, t, grid);
  if (decay > kArctanEdgeDecay) {
    std::ostringstream msg;
    msg << "grid too narrow for the arctan route: envelope decays only to " << decay
        << " at the window edge (need <= " << kArctanEdgeDecay << ")";
    throw EdgeDecayError(msg.str());
  }
  const auto k = coefficients(params);
  const auto ph = grid_phases(params, t, grid);
  const std::size_t n = grid.points();

  // Continuous branch of 2*arctan(G/F).
  std::vector<double> angle(n);
  double previous = 0;
  double unwrap = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = ph.offset0 + static_cast<double>(j) * ph.spacing;
    double g = 0;
    double f = 0;
    gf_scaled(k, k.alpha * u + ph.theta0, k.beta * u + ph.z0, g, f);
    const double raw = std::atan2(g, f);
    if (j > 0) {
      const double jump = raw - previous;
      if (jump > std::numbers::pi) unwrap -= 2.0 * std::numbers::pi;
      if (jump < -std::numbers::pi) unwrap += 2.0 * std::numbers::pi;
    }
    previous = raw;
    angle[j] = 2.0 * (raw + unwrap);
  }

  // The antiderivative climbs by the total mass across the window; subtract
  // the ramp so the periodic extension is smooth.
  const double rise = angle[n - 1] - angle[0];
  const double length = grid.length();
  SampledField detrended(grid);
  for (std::size_t j = 0; j < n; ++j) {
    detrended.values[j] = angle[j] - rise * static_cast<double>(j) / static_cast<double>(n);
  }
  SampledField out = derivative(detrended, 1, Periodicity::kPeriodic);
  const double slope = rise / length;
  for (double& v : out.values) v += slope;
  return out;
}

double eval_approx(const BreatherParams& params, double t, double x) {
  const PhaseOrigin o = phase_origin(params, t, x);
  return kernels::approx_value(params.beta(), o.theta, o.z);
}

double sech_profile(double beta, double xi) {
  return beta * std::numbers::sqrt2 / std::cosh(beta * xi);
}

double envelope_center(const BreatherParams& params, double t) {
  return -phase_velocities(params).gamma5 * t - params.x2();
}

double breather_mass(const BreatherParams& params) {
  return -2.0 * std::atan(4.0 * params.mu() * params.beta() / params.discriminant());
}

SampledField sample_breather(const BreatherParams& params, double t, const Grid& grid) {
  SampledField out(grid);
  kernels::sample_rational(coefficients(params), grid_phases(params, t, grid), out.values);
  return out;
}

SampledField sample_approx(const BreatherParams& params, double t, const Grid& grid) {
  SampledField out(grid);
  kernels::sample_approx(coefficients(params), grid_phases(params, t, grid), out.values);
  return out;
}

}  // namespace gardner5
