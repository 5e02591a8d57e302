#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "parosc/scenario.hpp"
#include "parosc/tdse.hpp"

using namespace parosc;

namespace {

double l2_diff(const QuantumState& a, const QuantumState& b) {
  QuantumState d = a;
  for (std::size_t j = 0; j < d.samples.size(); ++j)
    d.samples[j] -= b.samples[j];
  return d.norm();
}

PropagatorConfig config_for(const ScenarioRun& run, double dt) {
  PropagatorConfig cfg;
  cfg.grid = run.grid;
  cfg.dt = dt;
  cfg.m = run.consts.m;
  cfg.hbar = run.consts.hbar;
  cfg.omega_sq = [prof = run.profile](double t) { return prof.omega_sq(t); };
  if (!run.force.is_zero())
    cfg.force = [force = run.force](double t) { return force(t); };
  return cfg;
}

}  // namespace

TEST_CASE("norm is preserved to roundoff") {
  const auto run = build_run(preset_scenario("tanh_step"));
  const Propagator prop(config_for(run, 1e-3));
  const QuantumState start =
      sample_psi(0, 0.0, *run.data, run.consts, run.grid);
  CHECK(unitarity_drift(prop, start, 1000) < 1e-8);
}

TEST_CASE("stationary state only acquires the energy phase") {
  const auto run = build_run(preset_scenario("constant"));
  const Propagator prop(config_for(run, 1e-3));
  const QuantumState start =
      sample_psi(1, 0.0, *run.data, run.consts, run.grid);
  const QuantumState evolved = prop.evolve(start, 1000);
  QuantumState want = start;
  want.t = evolved.t;
  const Complex phase = std::exp(Complex(0.0, -run.consts.energy(1) * 1.0));
  for (auto& v : want.samples) v *= phase;
  CHECK(l2_diff(evolved, want) < 1e-6);
}

TEST_CASE("propagated states track the closed forms") {
  for (const auto& name : preset_names()) {
    Scenario sc = preset_scenario(name);
    sc.grid_n = 4096;  // keeps spatial error below the dt^2 term
    const auto run = build_run(sc);
    const Propagator prop(config_for(run, 2e-4));
    for (int n = 0; n <= 1; ++n) {
      const QuantumState start =
          sample_psi(n, 0.0, *run.data, run.consts, run.grid);
      const QuantumState evolved = prop.evolve(start, 5000);
      const QuantumState want =
          sample_psi(n, 1.0, *run.data, run.consts, run.grid);
      INFO(name, " n=", n, " err=", l2_diff(evolved, want));
      CHECK(l2_diff(evolved, want) < 1e-4);
    }
  }
}

TEST_CASE("second-order convergence in dt") {
  const auto run = build_run(preset_scenario("tanh_step"));
  const QuantumState start =
      sample_psi(2, 0.0, *run.data, run.consts, run.grid);
  const QuantumState want =
      sample_psi(2, 1.0, *run.data, run.consts, run.grid);
  const double coarse =
      l2_diff(Propagator(config_for(run, 4e-3)).evolve(start, 250), want);
  const double fine =
      l2_diff(Propagator(config_for(run, 2e-3)).evolve(start, 500), want);
  const double ratio = coarse / fine;
  INFO("coarse=", coarse, " fine=", fine, " ratio=", ratio);
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);
}

TEST_CASE("residual of the closed-form solution map") {
  const auto run = build_run(preset_scenario("tanh_step"));
  auto state_at = [&](double t) {
    return sample_psi(1, t, *run.data, run.consts, run.grid);
  };
  auto omega_sq = [&](double t) { return run.profile.omega_sq(t); };
  CHECK(pde_residual(state_at, 0.3, 5e-3, run.consts.m, run.consts.hbar,
                     omega_sq, nullptr) < 1e-4);
}

TEST_CASE("additive time-dependent potential is a pure phase") {
  const auto run = build_run(preset_scenario("constant"));
  const QuantumState start =
      sample_psi(0, 0.0, *run.data, run.consts, run.grid);
  const int steps = 1000;
  const double dt = 1e-3;
  const QuantumState plain =
      Propagator(config_for(run, dt)).evolve(start, steps);
  PropagatorConfig cfg = config_for(run, dt);
  cfg.v0 = [](double t) { return std::sin(t); };
  const QuantumState shifted = Propagator(cfg).evolve(start, steps);
  // remove exp[-(i/hbar) int V0] and compare
  QuantumState corrected = shifted;
  const Complex ph = zero_point_phase([](double t) { return std::sin(t); },
                                      steps * dt, 0.0, run.consts.hbar);
  for (auto& v : corrected.samples) v /= ph;
  CHECK(std::abs(std::abs(inner_product(corrected, plain).value) - 1.0) <
        1e-6);
  CHECK(l2_diff(corrected, plain) < 1e-5);
}

TEST_CASE("input validation and wall guards") {
  const auto run = build_run(preset_scenario("constant"));
  PropagatorConfig cfg = config_for(run, 1e-3);
  cfg.omega_sq = nullptr;
  CHECK_THROWS_AS(Propagator{cfg}, std::invalid_argument);
  cfg = config_for(run, -1.0);
  CHECK_THROWS_AS(Propagator{cfg}, std::invalid_argument);

  const Propagator prop(config_for(run, 1e-3));
  QuantumState bad = sample_psi(0, 0.0, *run.data, run.consts, run.grid);
  bad.samples.front() = Complex(1e-3, 0.0);
  CHECK_THROWS_AS(prop.evolve(bad, 10), AccuracyError);
}
