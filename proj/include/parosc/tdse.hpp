#pragma once

#include "parosc/states.hpp"

namespace parosc {

// Independent finite-difference propagator for
//   i hbar dpsi/dt = [-(hbar^2/2m) d2/dx2 + (m/2) Omega^2(t) x^2 + F(t) x] psi
// used to check the closed-form states without sharing their machinery.
struct PropagatorConfig {
  Grid grid;
  double dt = 1e-3;
  double m = 1.0;
  double hbar = 1.0;
  std::function<double(double)> omega_sq;  // Omega^2(t)
  std::function<double(double)> force;     // F(t), may be null for zero
  std::function<double(double)> v0;        // additive V0(t), may be null
  bool parallel = true;
};

// Crank-Nicolson with a Numerov-corrected mass matrix: second order in dt,
// effectively sixth order in h, exactly unitary, still tridiagonal.
class Propagator {
 public:
  explicit Propagator(PropagatorConfig cfg);

  // Advances `state` by n_steps of cfg.dt. Throws AccuracyError if the
  // wavefunction grows above 1e-6 at the Dirichlet walls.
  QuantumState evolve(const QuantumState& start, int n_steps) const;

  double potential(double x, double t) const;

 private:
  PropagatorConfig cfg_;
};

// Pointwise residual of the Schrodinger equation for a closed-form state
// map: time derivative by a 4th-order stencil with spacing dt_probe, space
// derivative by a 4th-order stencil on the grid. Returns max |residual| /
// max |H psi| over the interior.
double pde_residual(const std::function<QuantumState(double)>& state_at,
                    double t, double dt_probe, double m, double hbar,
                    const std::function<double(double)>& omega_sq,
                    const std::function<double(double)>& force);

// max_t | ||psi(t)|| - ||psi(0)|| | over the trajectory of evolve.
double unitarity_drift(const Propagator& prop, const QuantumState& start,
                       int n_steps, int sample_every = 50);

}  // namespace parosc
