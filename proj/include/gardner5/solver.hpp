#pragma once

// Integrating-factor RK4 pseudospectral evolution of
//   v_t + 10 mu^2 v_xxx + v_5x + [K_mu(v)]_x = 0
// on a periodic window. The dispersive linear part is applied exactly in
// Fourier space; the nonlinear flux is formed on a zero-padded grid.

#include <complex>
#include <cstddef>
#include <vector>

#include "gardner5/fourier.hpp"

namespace gardner5 {

struct SolverConfig {
  double dt = 0;
  double t_end = 0;
  /// Padding ratio for the nonlinear products (>= 3 for quintic terms).
  std::size_t dealias_factor = 3;
  /// Checkpoint every this many steps; 0 keeps only the initial and final
  /// states.
  std::size_t diagnostics_every = 0;
  /// Switch the nonlinear flux off (pure linear flow).
  bool nonlinear = true;
  /// kDecayed requires edge_ratio(initial) <= 1e-12; kPeriodic accepts
  /// data that is periodic on the window by construction.
  Periodicity periodicity = Periodicity::kDecayed;
};

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<SampledField> fields;
  double mass_drift = 0;
  double l2_drift = 0;
  std::size_t steps = 0;
  /// dt exceeded stable_time_step() for the initial data.
  bool step_size_warning = false;
};

/// Fourier symbol of -(10 mu^2 d_x^3 + d_x^5): i xi^3 (10 mu^2 - xi^2).
std::complex<double> linear_symbol(double mu, double xi);

/// Explicit stability bound for the nonlinear flux. The quasi-linear part of
/// [K_mu(v)]_x is (10 v^2 + 20 mu v) v_xxx, so RK4 needs
/// dt * (10|v|^2 + 20 mu |v|) xi_max^3 to stay inside its stability region;
/// the bound also covers the 20 (mu + v) v_x v_xx term.
double stable_time_step(const SampledField& initial, double mu);

/// 0.15 * stable_time_step: the largest step for which the breather runs
/// converge at fourth order.
double recommended_time_step(const SampledField& initial, double mu);

/// Evolves to t_end in ceil(t_end/dt) equal steps.
/// Throws InvalidParameter for a bad config, EdgeDecayError for initial data
/// that is not decayed at the window edges, BlowUpError when sup|v| exceeds
/// 1e3 sup|v0| or a NaN appears.
EvolutionTrace evolve(const SampledField& initial, double mu, const SolverConfig& config);

/// Exact linear flow e^{L t} v0.
SampledField linear_evolution(const SampledField& initial, double mu, double t);

struct ConservedDrift {
  double mass_drift;
  double l2_drift;
};

/// max |int v - int v0| and max |‖v‖^2 - ‖v0‖^2| over the checkpoints.
ConservedDrift conserved_diagnostics(const EvolutionTrace& trace);

}  // namespace gardner5
