#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "gardner5/breather.hpp"
#include "gardner5/errors.hpp"
#include "gardner5/solver.hpp"
#include "support.hpp"

using namespace gardner5;

namespace {

constexpr double kPi = std::numbers::pi;

SampledField sample(const Grid& g, auto&& fn) {
  SampledField f(g);
  for (std::size_t j = 0; j < g.points(); ++j) f.values[j] = fn(g.node(j));
  return f;
}

double rel_l2(const SampledField& a, const SampledField& b) {
  return l2_norm(difference(a, b)) / l2_norm(b);
}

// The cross-validation window for the (2, 1, 0.3) breather.
Grid solver_grid() { return make_grid(0, 20 * kPi, 576); }

}  // namespace

TEST_CASE("linear symbol") {
  CHECK(linear_symbol(0.3, 0.0) == std::complex<double>(0, 0));
  const auto a = linear_symbol(0.0, 1.0);
  CHECK(a.real() == 0.0);
  CHECK(a.imag() == doctest::Approx(-1.0));
  const auto b = linear_symbol(0.3, 2.0);
  CHECK(b.real() == 0.0);
  CHECK(b.imag() == doctest::Approx(-24.8).epsilon(1e-14));
  // Odd in xi, so real fields stay real.
  CHECK(linear_symbol(0.7, -3.0) == -linear_symbol(0.7, 3.0));
}

TEST_CASE("config validation") {
  const SampledField v0(make_grid(0, 40, 64));
  SolverConfig c{.dt = 1e-3, .t_end = 0.01};
  c.dt = 0;
  CHECK_THROWS_AS(evolve(v0, 0.1, c), InvalidParameter);
  c.dt = 1e-3;
  c.t_end = -1;
  CHECK_THROWS_AS(evolve(v0, 0.1, c), InvalidParameter);
  c.t_end = 0.01;
  c.dealias_factor = 2;
  CHECK_THROWS_AS(evolve(v0, 0.1, c), InvalidParameter);
  c.dealias_factor = 3;
  CHECK_THROWS_AS(evolve(v0, -0.1, c), InvalidParameter);
}

TEST_CASE("zero data stays zero") {
  const SampledField v0(make_grid(0, 40, 128));
  const EvolutionTrace tr = evolve(v0, 0.3, {.dt = 1e-3, .t_end = 0.05, .diagnostics_every = 10});
  CHECK(tr.fields.size() == tr.times.size());
  CHECK(tr.fields.size() >= 3);
  for (const auto& f : tr.fields) CHECK(support::sup(f.values) == 0.0);
  const ConservedDrift d = conserved_diagnostics(tr);
  CHECK(d.mass_drift == 0.0);
  CHECK(d.l2_drift == 0.0);
}

TEST_CASE("checkpoints") {
  const SampledField v0 = sample(make_grid(0, 80, 512), [](double x) {
    return 0.1 / std::cosh(x);
  });
  const EvolutionTrace tr = evolve(v0, 0.2, {.dt = 1e-3, .t_end = 0.0105, .diagnostics_every = 4});
  // ceil(10.5) = 11 equal steps; checkpoints at 0, 4, 8 and the final step.
  CHECK(tr.steps == 11);
  REQUIRE(tr.times.size() == 4);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(0.0105).epsilon(1e-14));
  for (std::size_t i = 1; i < tr.times.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
  CHECK(support::sup_gap(tr.fields.front(), v0) <= 1e-15);
  CHECK_THROWS_AS(conserved_diagnostics(EvolutionTrace{}), InvalidParameter);
}

TEST_CASE("linear flow is reproduced exactly with the nonlinearity off") {
  const Grid g = make_grid(kPi, 2 * kPi, 64);
  const SampledField v0 = sample(g, [](double x) {
    return std::sin(x) + 0.5 * std::cos(3 * x) - 0.25 * std::sin(7 * x + 0.3);
  });
  const double t = 0.137;
  const SampledField exact = linear_evolution(v0, 0.4, t);
  for (double dt : {t, t / 3, t / 17}) {
    CAPTURE(dt);
    SolverConfig c{.dt = dt, .t_end = t};
    c.nonlinear = false;
    c.periodicity = Periodicity::kPeriodic;
    const EvolutionTrace tr = evolve(v0, 0.4, c);
    CHECK(rel_l2(tr.fields.back(), exact) <= 1e-12);
  }
  // The oracle itself: each mode rotates by its symbol.
  const SampledField one_mode = sample(g, [](double x) { return std::sin(3 * x); });
  const double w = linear_symbol(0.4, 3.0).imag();
  const SampledField moved = linear_evolution(one_mode, 0.4, t);
  for (std::size_t j = 0; j < g.points(); ++j) {
    CHECK(std::abs(moved.values[j] - std::sin(3 * g.node(j) + w * t)) <= 1e-12);
  }
}

TEST_CASE("tiny data follows the linear flow") {
  const Grid g = make_grid(0, 80, 512);
  const double t = 0.05;
  auto gap = [&](double amplitude, double mu) {
    const SampledField v0 = sample(g, [&](double x) { return amplitude / std::cosh(x); });
    const EvolutionTrace tr = evolve(v0, mu, {.dt = 1e-3, .t_end = t});
    return rel_l2(tr.fields.back(), linear_evolution(v0, mu, t));
  };
  // At mu = 0 the nonlinearity is cubic, so its relative effect is ~1e-16.
  CHECK(gap(1e-8, 0.0) <= 1e-12);
  // For mu > 0 the quadratic terms 10 mu v_x^2 + 20 mu v v_xx remain; their
  // relative effect is proportional to the amplitude.
  const double g8 = gap(1e-8, 0.3), g7 = gap(1e-7, 0.3);
  CAPTURE(g8);
  CHECK(g7 / g8 == doctest::Approx(10).epsilon(0.01));
  CHECK(g8 <= 1e-8);
}

TEST_CASE("exact breather over a short run") {
  const BreatherParams p = validate_params(2, 1, 0.3);
  const Grid g = solver_grid();
  const SampledField v0 = sample_breather(p, 0, g);
  const double t_end = 1e-3;
  const double dt = recommended_time_step(v0, p.mu());
  CHECK(dt == doctest::Approx(0.15 * stable_time_step(v0, p.mu())));

  const EvolutionTrace fine = evolve(v0, p.mu(), {.dt = dt, .t_end = t_end});
  const EvolutionTrace coarse = evolve(v0, p.mu(), {.dt = 10 * dt, .t_end = t_end});
  CHECK_FALSE(fine.step_size_warning);
  CHECK(coarse.step_size_warning);

  CHECK(rel_l2(fine.fields.back(), sample_breather(p, t_end, g)) <= 1e-6);
  const double m2 = std::pow(l2_norm(v0), 2);
  CHECK(fine.mass_drift <= 1e-10);
  CHECK(fine.l2_drift / m2 <= 1e-8);
  // Coarser steps conserve L^2 worse.
  CHECK(coarse.l2_drift > fine.l2_drift);
  CHECK(coarse.mass_drift >= fine.mass_drift);

  const ConservedDrift d = conserved_diagnostics(fine);
  // The trace drifts come from the spectrum, the diagnostics from the nodes.
  CHECK(d.mass_drift <= 1e-14);
  CHECK(d.l2_drift == doctest::Approx(fine.l2_drift).epsilon(1e-3));
}

TEST_CASE("blow-up guard") {
  const BreatherParams p = validate_params(2, 1, 0.3);
  const SampledField v0 = sample_breather(p, 0, solver_grid());
  CHECK_THROWS_AS(evolve(v0, p.mu(), {.dt = 4e-6, .t_end = 0.01}), BlowUpError);
}

TEST_CASE("solver refuses data that is not edge-decayed") {
  const BreatherParams p = validate_params(2, 1, 0.3);
  const SampledField v0 = sample_breather(p, 0, make_grid(0, 10, 256));
  CHECK_THROWS_AS(evolve(v0, p.mu(), {.dt = 1e-7, .t_end = 1e-6}), EdgeDecayError);
}
