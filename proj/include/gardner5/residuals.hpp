#pragma once

// Residual checks of sampled breathers against the fifth-order Gardner
// equation, its fourth-order elliptic characterization and (at mu = 0) the
// fifth-order mKdV equation.

#include <vector>

#include "gardner5/breather.hpp"
#include "gardner5/fourier.hpp"

namespace gardner5 {

struct ResidualReport {
  double sup_abs = 0;
  double l2_abs = 0;
  double sup_rel = 0;
  /// sup-norm of the largest single term of the equation.
  double terms_scale = 0;
};

/// Builds a report from a residual and the individual equation terms.
ResidualReport make_report(const SampledField& residual,
                           const std::vector<SampledField>& terms);

/// K_mu(v) with spectral derivatives.
SampledField k_mu(const SampledField& field, double mu);

/// The v_t implied by the equation: -(10 mu^2 v_xxx + v_5x + [K_mu(v)]_x).
SampledField gardner5_rhs(const SampledField& field, double mu);

/// Closed-form samples on a 7-point time stencil t + c*step,
/// c in {-2, -1, -1/2, 0, 1/2, 1, 2}, used to difference in time.
struct TimeStencil {
  double t = 0;
  double step = 0;
  /// Fastest phase rate alpha|delta5| + beta|gamma5| of the sampled
  /// solution; 0 means unknown (estimated from the samples).
  double phase_rate = 0;
  std::vector<SampledField> samples;  // ordered as the offsets above

  const SampledField& center() const { return samples[3]; }
};

/// Default time step 1e-4 / max(|delta5|, |gamma5|).
double default_time_step(const BreatherParams& params);

TimeStencil make_time_stencil(const BreatherParams& params, double t, const Grid& grid,
                              double step);

/// Fourth-order central difference at steps h and h/2 combined by
/// Richardson extrapolation. Throws StepSizeError when the step moves a
/// phase by more than 0.1 or the pair disagrees by more than ten times the
/// expected fourth-order gap.
SampledField time_derivative(const TimeStencil& stencil);

struct PdeResidualOptions {
  double time_step = 0;  // 0 selects default_time_step
  /// Added to the sampled breather at every stencil time (sensitivity tests).
  double corruption = 0;
};

/// D_t B + 10 mu^2 B_xxx + B_5x + [K_mu(B)]_x.
ResidualReport pde_residual(const BreatherParams& params, double t, const Grid& grid,
                            const PdeResidualOptions& options = {});

/// Residual of the fourth-order elliptic equation satisfied by the breather.
/// If `field` is given it replaces the sampled breather.
ResidualReport elliptic_residual(const BreatherParams& params, double t, const Grid& grid);
ResidualReport elliptic_residual(const BreatherParams& params, const SampledField& field);

/// Residual of u_t + (u_4x + 10 u u_x^2 + 10 u^2 u_xx + 6 u^5)_x = 0.
ResidualReport mkdv5_residual(const TimeStencil& stencil);

/// Pointwise residual fields (for consistency checks between equations).
SampledField pde_residual_field(const TimeStencil& stencil, double mu);
SampledField mkdv5_residual_field(const TimeStencil& stencil);

}  // namespace gardner5
