#include "gardner5/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gardner5/errors.hpp"
#include "gardner5/fft.hpp"
#include "gardner5/kernels.hpp"

namespace gardner5 {
namespace {

using cplx = std::complex<double>;

constexpr double kBlowUpFactor = 1e3;
// The interaction-picture flux oscillates at the linear rates ~xi^5, so the
// stability bound alone leaves RK4 far from its asymptotic regime.
constexpr double kAccuracyFraction = 0.15;

double sup_norm(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Nonlinear term -i xi FFT[K_mu(v)] evaluated on a padded grid.
class NonlinearFlux {
 public:
  NonlinearFlux(std::size_t n, std::size_t padded, double length, double mu, double guard)
      : n_(n), m_(padded), mu_(mu), guard_(guard), fft_(padded), work_(padded / 2 + 1),
        v_(padded), vx_(padded), vxx_(padded), k_(padded), kspec_(padded / 2 + 1),
        xi_(n / 2 + 1) {
    const double dxi = 2.0 * std::numbers::pi / length;
    for (std::size_t k = 0; k < xi_.size(); ++k) xi_[k] = static_cast<double>(k) * dxi;
  }

  // in and out are half spectra of length n/2+1 (unnormalized FFT convention).
  void operator()(std::span<const cplx> in, std::span<cplx> out) {
    const double inv_n = 1.0 / static_cast<double>(n_);
    const std::size_t half = n_ / 2;  // modes 0..half-1; Nyquist is kept zero
    const cplx i_unit(0.0, 1.0);

    std::fill(work_.begin(), work_.end(), cplx(0.0));
    for (std::size_t k = 0; k < half; ++k) work_[k] = in[k] * inv_n;
    fft_.backward(work_, v_);
    for (std::size_t k = 0; k < half; ++k) work_[k] = i_unit * xi_[k] * in[k] * inv_n;
    fft_.backward(work_, vx_);
    for (std::size_t k = 0; k < half; ++k) work_[k] = -xi_[k] * xi_[k] * in[k] * inv_n;
    fft_.backward(work_, vxx_);

    const double peak = sup_norm(v_);
    if (!std::isfinite(peak) || peak > guard_) {
      std::ostringstream msg;
      msg << "solution blew up (sup|v| = " << peak << ", guard " << guard_
          << "); reduce dt";
      throw BlowUpError(msg.str());
    }

    kernels::k_mu(v_, vx_, vxx_, mu_, k_);
    fft_.forward(k_, kspec_);
    const double back = static_cast<double>(n_) / static_cast<double>(m_);
    for (std::size_t k = 0; k < half; ++k) out[k] = -i_unit * xi_[k] * kspec_[k] * back;
    out[half] = 0.0;
  }

 private:
  std::size_t n_;
  std::size_t m_;
  double mu_;
  double guard_;
  RealFft fft_;
  std::vector<cplx> work_;
  std::vector<double> v_, vx_, vxx_, k_;
  std::vector<cplx> kspec_;
  std::vector<double> xi_;
};

double spectral_mass(std::span<const cplx> spec, double h) { return h * spec[0].real(); }

double spectral_energy(std::span<const cplx> spec, std::size_t n, double h) {
  double acc = 0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double mult = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
    acc += mult * std::norm(spec[k]);
  }
  return h * acc / static_cast<double>(n);
}

SampledField to_field(const Grid& grid, RealFft& fft, std::span<const cplx> spec) {
  SampledField out(grid);
  fft.backward(spec, out.values);
  const double inv_n = 1.0 / static_cast<double>(grid.points());
  for (double& v : out.values) v *= inv_n;
  return out;
}

}  // namespace

std::complex<double> linear_symbol(double mu, double xi) {
  return {0.0, xi * xi * xi * (10.0 * mu * mu - xi * xi)};
}

double stable_time_step(const SampledField& initial, double mu) {
  const double vmax = sup_norm(initial.values);
  if (vmax == 0) return std::numeric_limits<double>::infinity();
  const SampledField vx = derivative(initial, 1, Periodicity::kPeriodic);
  const double vxmax = sup_norm(vx.values);
  const double xi = initial.grid.max_frequency();
  const double rate = (10.0 * vmax * vmax + 20.0 * mu * vmax) * xi * xi * xi +
                      20.0 * (mu + vmax) * vxmax * xi * xi;
  return 1.0 / rate;
}

double recommended_time_step(const SampledField& initial, double mu) {
  return kAccuracyFraction * stable_time_step(initial, mu);
}

SampledField linear_evolution(const SampledField& initial, double mu, double t) {
  const std::size_t n = initial.size();
  RealFft fft(n);
  auto spec = fft.forward(initial.values);
  const double dxi = 2.0 * std::numbers::pi / initial.grid.length();
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (2 * k == n) {
      spec[k] = 0.0;
      continue;
    }
    spec[k] *= std::exp(linear_symbol(mu, static_cast<double>(k) * dxi) * t);
  }
  return to_field(initial.grid, fft, spec);
}

EvolutionTrace evolve(const SampledField& initial, double mu, const SolverConfig& config) {
  if (!(config.dt > 0)) throw InvalidParameter("solver dt must be positive");
  if (!(config.t_end >= 0)) throw InvalidParameter("solver t_end must be >= 0");
  if (config.dealias_factor < 3) {
    throw InvalidParameter("dealias_factor must be >= 3 for the quintic nonlinearity");
  }
  if (mu < 0) throw InvalidParameter("mu must be >= 0");
  if (config.periodicity == Periodicity::kDecayed) {
    const double edge = edge_ratio(initial);
    if (edge > kEdgeTolerance) {
      std::ostringstream msg;
      msg << "initial data is not decayed at its window edges (edge/max = " << edge
          << " > " << kEdgeTolerance << "); widen the window";
      throw EdgeDecayError(msg.str());
    }
  }

  const Grid& grid = initial.grid;
  const std::size_t n = grid.points();
  const double h = grid.spacing();
  const double v0max = sup_norm(initial.values);

  EvolutionTrace trace;
  trace.step_size_warning = config.dt > stable_time_step(initial, mu);

  const auto steps =
      static_cast<std::size_t>(std::ceil(config.t_end / config.dt - 1e-9));
  const double dt = steps > 0 ? config.t_end / static_cast<double>(steps) : 0.0;

  RealFft fft(n);
  std::vector<cplx> v = fft.forward(initial.values);
  v[n / 2] = 0.0;

  const double dxi = 2.0 * std::numbers::pi / grid.length();
  std::vector<cplx> half_step(v.size());
  std::vector<cplx> full_step(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const cplx l = linear_symbol(mu, static_cast<double>(k) * dxi);
    half_step[k] = std::exp(l * (0.5 * dt));
    full_step[k] = half_step[k] * half_step[k];
  }

  const double guard = v0max > 0 ? kBlowUpFactor * v0max : kBlowUpFactor;
  NonlinearFlux flux(n, config.dealias_factor * n, grid.length(), mu, guard);

  const double mass0 = spectral_mass(v, h);
  const double energy0 = spectral_energy(v, n, h);
  auto record = [&](double t) {
    trace.times.push_back(t);
    trace.fields.push_back(to_field(grid, fft, v));
    const SampledField& f = trace.fields.back();
    const double peak = sup_norm(f.values);
    if (!std::isfinite(peak) || peak > guard) {
      throw BlowUpError("solution blew up at a checkpoint");
    }
    trace.mass_drift = std::max(trace.mass_drift, std::abs(spectral_mass(v, h) - mass0));
    trace.l2_drift =
        std::max(trace.l2_drift, std::abs(spectral_energy(v, n, h) - energy0));
  };
  record(0.0);

  std::vector<cplx> k1(v.size()), k2(v.size()), k3(v.size()), k4(v.size()), stage(v.size());
  for (std::size_t step = 1; step <= steps; ++step) {
    if (config.nonlinear) {
      flux(v, k1);
      for (std::size_t k = 0; k < v.size(); ++k) stage[k] = half_step[k] * (v[k] + 0.5 * dt * k1[k]);
      flux(stage, k2);
      for (std::size_t k = 0; k < v.size(); ++k) stage[k] = half_step[k] * v[k] + 0.5 * dt * k2[k];
      flux(stage, k3);
      for (std::size_t k = 0; k < v.size(); ++k) stage[k] = full_step[k] * v[k] + dt * half_step[k] * k3[k];
      flux(stage, k4);
      for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = full_step[k] * v[k] +
               dt / 6.0 * (full_step[k] * k1[k] + 2.0 * half_step[k] * (k2[k] + k3[k]) + k4[k]);
      }
    } else {
      for (std::size_t k = 0; k < v.size(); ++k) v[k] *= full_step[k];
    }
    v[n / 2] = 0.0;
    const bool checkpoint =
        step == steps || (config.diagnostics_every > 0 && step % config.diagnostics_every == 0);
    if (checkpoint) record(static_cast<double>(step) * dt);
  }
  trace.steps = steps;
  return trace;
}

ConservedDrift conserved_diagnostics(const EvolutionTrace& trace) {
  if (trace.fields.empty()) throw InvalidParameter("trace has no checkpoints");
  const SampledField& first = trace.fields.front();
  const double mass0 = mean(first);
  const double l20 = l2_norm(first);
  ConservedDrift d{0, 0};
  for (const auto& f : trace.fields) {
    d.mass_drift = std::max(d.mass_drift, std::abs(mean(f) - mass0));
    const double l2 = l2_norm(f);
    d.l2_drift = std::max(d.l2_drift, std::abs(l2 * l2 - l20 * l20));
  }
  return d;
}

}  // namespace gardner5
