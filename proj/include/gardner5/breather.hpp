#pragma once

// Closed-form breather of the fifth-order Gardner equation
//
//   v_t + 10 mu^2 v_xxx + v_5x + [K_mu(v)]_x = 0,
//
// evaluated through two independent routes: the rational form 2M/N and the
// spectral x-derivative of 2 arctan(G/F).
//
// Phase convention. The published velocity polynomials delta5/gamma5 carry a
// -30 mu^4 term, the Galilean drift of the substitution u = mu + v into the
// fifth-order mKdV equation. The equation above has that drift removed, so the
// breather solves it only when both phases travel with delta5 + 30 mu^4 and
// gamma5 + 30 mu^4. PhaseConvention::kGardner (default) uses the shifted
// speeds; kPublished reproduces the printed polynomials verbatim, which solve
// the equation with an extra 30 mu^4 v_x term. Both coincide at mu = 0.

#include "gardner5/fourier.hpp"
#include "gardner5/kernels.hpp"

namespace gardner5 {

enum class PhaseConvention { kGardner, kPublished };

/// Validated breather parameters. Build with validate_params().
///
/// beta is called the "amplitude" although the large-alpha peak is 2 beta.
class BreatherParams {
 public:
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double mu() const { return mu_; }
  double x1() const { return x1_; }
  double x2() const { return x2_; }
  /// alpha^2 + beta^2 - 4 mu^2 > 0.
  double discriminant() const { return discriminant_; }
  PhaseConvention convention() const { return convention_; }

  /// Same parameters with both phase shifts translated by c.
  BreatherParams shifted(double c) const;
  BreatherParams with_convention(PhaseConvention convention) const;

 private:
  friend BreatherParams validate_params(double, double, double, double, double,
                                        PhaseConvention);
  BreatherParams() = default;

  double alpha_ = 1;
  double beta_ = 1;
  double mu_ = 0;
  double x1_ = 0;
  double x2_ = 0;
  double discriminant_ = 2;
  PhaseConvention convention_ = PhaseConvention::kGardner;
};

/// Rejects alpha <= 0, beta <= 0, mu < 0, Delta <= 0 and non-finite input,
/// throwing InvalidParameter with a message naming the constraint.
BreatherParams validate_params(double alpha, double beta, double mu, double x1 = 0,
                               double x2 = 0,
                               PhaseConvention convention = PhaseConvention::kGardner);

struct Velocities {
  double delta5;
  double gamma5;
};

/// The velocity polynomials exactly as published:
///   delta5 = -a^4 + 10a^2b^2 - 5b^4 + 10(a^2 - 3b^2)mu^2 - 30mu^4
///   gamma5 = -b^4 + 10a^2b^2 - 5a^4 + 10(3a^2 - b^2)mu^2 - 30mu^4
Velocities velocities(const BreatherParams& params);

/// 30 mu^4.
double galilean_shift(double mu);

/// The speeds entering y1 = x + delta5 t + x1 and y2 = x + gamma5 t + x2
/// under the parameters' phase convention.
Velocities phase_velocities(const BreatherParams& params);

/// G and F of the arctan form, both multiplied by exp(-log_scale).
/// log_scale is 0 unless |beta y2| exceeds kHyperbolicOverflow, in which
/// case it equals |beta y2| and the pair is the rescaled quotient path.
struct GFValue {
  double g;
  double f;
  double log_scale;
};

inline constexpr double kHyperbolicOverflow = 700.0;

GFValue eval_GF(const BreatherParams& params, double t, double x);

/// 2 M / N. Throws DegenerateDenominator if the scaled N underflows.
double eval_rational(const BreatherParams& params, double t, double x);

/// Samples 2 arctan(G/F) (continuous branch) on the grid and differentiates
/// spectrally. The antiderivative rises by the breather mass across the
/// window; that linear ramp is removed before the FFT and its slope added
/// back. Throws EdgeDecayError if the envelope bound at the window edges
/// exceeds 1e-14.
SampledField eval_arctan_derivative(const BreatherParams& params, double t, const Grid& grid);

/// 2 beta cos(alpha y1) sech(beta y2).
double eval_approx(const BreatherParams& params, double t, double x);

/// Q_beta(xi) = beta sqrt(2) sech(beta xi), the scaled ground state of
/// Q'' - Q + Q^3 = 0.
double sech_profile(double beta, double xi);

/// The x where beta*y2 vanishes: -gamma5 t - x2.
double envelope_center(const BreatherParams& params, double t);

/// Integral of the breather over the real line, -2 arctan(4 mu beta / Delta).
/// Nonzero whenever mu > 0.
double breather_mass(const BreatherParams& params);

/// exp(-beta * distance from the envelope center to the nearest window
/// edge), the decay of the sech envelope at the edges.
double envelope_edge_decay(const BreatherParams& params, double t, const Grid& grid);

/// Exact breather sampled on the grid (rational route).
SampledField sample_breather(const BreatherParams& params, double t, const Grid& grid);
/// Large-alpha approximation sampled on the grid.
SampledField sample_approx(const BreatherParams& params, double t, const Grid& grid);

/// Coefficients of the scaled rational kernel.
kernels::BreatherCoefficients coefficients(const BreatherParams& params);
/// Carrier/envelope phases of the grid nodes at time t.
kernels::GridPhases grid_phases(const BreatherParams& params, double t, const Grid& grid);

}  // namespace gardner5
