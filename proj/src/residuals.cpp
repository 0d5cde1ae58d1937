#include "gardner5/residuals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "gardner5/errors.hpp"
#include "gardner5/kernels.hpp"

namespace gardner5 {
namespace {

constexpr std::array<double, 7> kStencilOffsets = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};

double sup_norm(const SampledField& f) {
  double m = 0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

SampledField scaled(const SampledField& f, double c) {
  SampledField out = f;
  for (double& v : out.values) v *= c;
  return out;
}

void accumulate(SampledField& acc, const SampledField& term) {
  for (std::size_t j = 0; j < acc.size(); ++j) acc.values[j] += term.values[j];
}

SampledField pointwise(const SampledField& like, auto&& fn) {
  SampledField out(like.grid);
  for (std::size_t j = 0; j < out.size(); ++j) out.values[j] = fn(j);
  return out;
}

struct Derivatives {
  SampledField d1, d2, d3, d4, d5;
};

Derivatives all_derivatives(const SampledField& v) {
  return {derivative(v, 1), derivative(v, 2), derivative(v, 3), derivative(v, 4),
          derivative(v, 5)};
}

// Terms of the Gardner equation except the time derivative.
std::vector<SampledField> gardner_space_terms(const SampledField& v, double mu) {
  const Derivatives d = all_derivatives(v);
  SampledField k(v.grid);
  kernels::k_mu(v.values, d.d1.values, d.d2.values, mu, k.values);
  return {scaled(d.d3, 10.0 * mu * mu), d.d5, derivative(k, 1)};
}

}  // namespace

ResidualReport make_report(const SampledField& residual,
                           const std::vector<SampledField>& terms) {
  ResidualReport r;
  r.sup_abs = sup_norm(residual);
  r.l2_abs = l2_norm(residual);
  for (const auto& t : terms) r.terms_scale = std::max(r.terms_scale, sup_norm(t));
  r.sup_rel = r.terms_scale > 0 ? r.sup_abs / r.terms_scale : r.sup_abs;
  return r;
}

SampledField k_mu(const SampledField& field, double mu) {
  const SampledField vx = derivative(field, 1);
  const SampledField vxx = derivative(field, 2);
  SampledField out(field.grid);
  kernels::k_mu(field.values, vx.values, vxx.values, mu, out.values);
  return out;
}

SampledField gardner5_rhs(const SampledField& field, double mu) {
  SampledField out(field.grid);
  for (const auto& term : gardner_space_terms(field, mu)) accumulate(out, term);
  for (double& v : out.values) v = -v;
  return out;
}

double default_time_step(const BreatherParams& params) {
  const Velocities v = phase_velocities(params);
  const double speed = std::max(std::abs(v.delta5), std::abs(v.gamma5));
  return speed > 0 ? 1e-4 / speed : 1e-4;
}

TimeStencil make_time_stencil(const BreatherParams& params, double t, const Grid& grid,
                              double step) {
  if (!(step > 0)) throw InvalidParameter("time stencil step must be positive");
  TimeStencil s;
  s.t = t;
  s.step = step;
  const Velocities v = phase_velocities(params);
  s.phase_rate = params.alpha() * std::abs(v.delta5) + params.beta() * std::abs(v.gamma5);
  s.samples.reserve(kStencilOffsets.size());
  for (double c : kStencilOffsets) s.samples.push_back(sample_breather(params, t + c * step, grid));
  return s;
}

SampledField time_derivative(const TimeStencil& s) {
  if (s.samples.size() != kStencilOffsets.size()) {
    throw InvalidParameter("time stencil must hold 7 samples");
  }
  const auto& m2 = s.samples[0].values;
  const auto& m1 = s.samples[1].values;
  const auto& mh = s.samples[2].values;
  const auto& ph = s.samples[4].values;
  const auto& p1 = s.samples[5].values;
  const auto& p2 = s.samples[6].values;
  const double h = s.step;

  SampledField out(s.center().grid);
  double disagreement = 0;
  double peak_rate = 0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double coarse = (-p2[j] + 8.0 * p1[j] - 8.0 * m1[j] + m2[j]) / (12.0 * h);
    const double fine = (-p1[j] + 8.0 * ph[j] - 8.0 * mh[j] + m1[j]) / (6.0 * h);
    out.values[j] = (16.0 * fine - coarse) / 15.0;
    disagreement = std::max(disagreement, std::abs(coarse - fine));
    peak_rate = std::max(peak_rate, std::abs(out.values[j]));
  }

  // The coarse/fine gap of a fourth-order pair is ~(15/16) of the coarse
  // truncation error h^4 |f^(5)| / 30 ~ h^4 w^5 |f| / 30 with w the fastest
  // phase rate. Rounding adds ~eps |f| / h per sample. The estimate only
  // holds while a step moves the phases by a small fraction of a radian.
  double peak_value = 0;
  for (double v : s.center().values) peak_value = std::max(peak_value, std::abs(v));
  const double rate =
      s.phase_rate > 0 ? s.phase_rate : (peak_value > 0 ? peak_rate / peak_value : 0.0);
  if (h * rate > 0.1) {
    std::ostringstream msg;
    msg << "time step " << h << " moves the phase by " << h * rate
        << " rad per step; reduce the time step";
    throw StepSizeError(msg.str());
  }
  const double truncation = std::pow(h * rate, 4) * rate * peak_value / 30.0;
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * peak_value / h;
  if (disagreement > 10.0 * (truncation + rounding)) {
    std::ostringstream msg;
    msg << "Richardson pair disagrees by " << disagreement << " (expected <= "
        << truncation + rounding << "); reduce the time step";
    throw StepSizeError(msg.str());
  }
  return out;
}

SampledField pde_residual_field(const TimeStencil& stencil, double mu) {
  SampledField r = time_derivative(stencil);
  for (const auto& term : gardner_space_terms(stencil.center(), mu)) accumulate(r, term);
  return r;
}

ResidualReport pde_residual(const BreatherParams& params, double t, const Grid& grid,
                            const PdeResidualOptions& options) {
  const double step = options.time_step > 0 ? options.time_step : default_time_step(params);
  TimeStencil stencil = make_time_stencil(params, t, grid, step);
  if (options.corruption != 0) {
    const double c = envelope_center(params, t);
    for (auto& sample : stencil.samples) {
      for (std::size_t j = 0; j < sample.size(); ++j) {
        sample.values[j] += options.corruption / std::cosh(grid.node(j) - c);
      }
    }
  }
  const SampledField dt = time_derivative(stencil);
  std::vector<SampledField> terms = gardner_space_terms(stencil.center(), params.mu());
  SampledField r = dt;
  for (const auto& term : terms) accumulate(r, term);
  terms.push_back(dt);
  return make_report(r, terms);
}

ResidualReport elliptic_residual(const BreatherParams& params, const SampledField& b) {
  const double a2 = params.alpha() * params.alpha();
  const double b2 = params.beta() * params.beta();
  const double mu = params.mu();
  const double split = 2.0 * (a2 - b2);
  const double sum2 = (a2 + b2) * (a2 + b2);
  const SampledField bx = derivative(b, 1);
  const SampledField bxx = derivative(b, 2);
  const SampledField b4 = derivative(b, 4);
  const auto& v = b.values;
  const auto& vx = bx.values;
  const auto& vxx = bxx.values;

  std::vector<SampledField> terms;
  terms.push_back(b4);
  terms.push_back(scaled(bxx, split));
  terms.push_back(pointwise(b, [&](std::size_t j) { return split * 6.0 * mu * v[j] * v[j]; }));
  terms.push_back(pointwise(b, [&](std::size_t j) { return split * 2.0 * v[j] * v[j] * v[j]; }));
  terms.push_back(scaled(b, sum2));
  terms.push_back(pointwise(b, [&](std::size_t j) { return 10.0 * v[j] * v[j] * vxx[j]; }));
  terms.push_back(pointwise(b, [&](std::size_t j) { return 10.0 * v[j] * vx[j] * vx[j]; }));
  terms.push_back(pointwise(b, [&](std::size_t j) { return 6.0 * std::pow(v[j], 5); }));
  terms.push_back(pointwise(b, [&](std::size_t j) { return 10.0 * mu * vx[j] * vx[j]; }));
  terms.push_back(pointwise(b, [&](std::size_t j) { return 20.0 * mu * v[j] * vxx[j]; }));
  terms.push_back(
      pointwise(b, [&](std::size_t j) { return 40.0 * mu * mu * v[j] * v[j] * v[j]; }));
  terms.push_back(pointwise(b, [&](std::size_t j) { return 30.0 * mu * std::pow(v[j], 4); }));

  SampledField r(b.grid);
  for (const auto& term : terms) accumulate(r, term);
  return make_report(r, terms);
}

ResidualReport elliptic_residual(const BreatherParams& params, double t, const Grid& grid) {
  return elliptic_residual(params, sample_breather(params, t, grid));
}

namespace {

SampledField mkdv5_nonlinear(const SampledField& u) {
  const SampledField ux = derivative(u, 1);
  const SampledField uxx = derivative(u, 2);
  return pointwise(u, [&](std::size_t j) {
    const double v = u.values[j];
    return 10.0 * v * ux.values[j] * ux.values[j] + 10.0 * v * v * uxx.values[j] +
           v * v * (v * (v * (6.0 * v)));
  });
}

}  // namespace

// (u_4x)_x is taken as u_5x directly: differentiating the spectral u_4x again
// would re-transform its rounding noise, which is not edge-decayed.
SampledField mkdv5_residual_field(const TimeStencil& stencil) {
  const SampledField& u = stencil.center();
  SampledField r = time_derivative(stencil);
  accumulate(r, derivative(u, 5));
  accumulate(r, derivative(mkdv5_nonlinear(u), 1));
  return r;
}

ResidualReport mkdv5_residual(const TimeStencil& stencil) {
  const SampledField& u = stencil.center();
  std::vector<SampledField> terms = {time_derivative(stencil), derivative(u, 5),
                                     derivative(mkdv5_nonlinear(u), 1)};
  return make_report(mkdv5_residual_field(stencil), terms);
}

}  // namespace gardner5
