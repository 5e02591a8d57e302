#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "parosc/ermakov.hpp"

namespace parosc {

struct PhysConstants {
  double m = 1.0;
  double hbar = 1.0;
  double w = 1.0;
  double energy(int n) const { return hbar * w * (n + 0.5); }
};

// Uniform spatial grid with N points, spacing h = (x_max - x_min)/(N-1).
struct Grid {
  double x_min = -10.0;
  double x_max = 10.0;
  int n = 2048;

  Grid() = default;
  Grid(double lo, double hi, int points);

  double h() const { return (x_max - x_min) / (n - 1); }
  double x(int j) const { return x_min + j * h(); }
  bool operator==(const Grid&) const = default;
};

// Complex-valued wavefunction sampled on a grid at a fixed time.
struct QuantumState {
  std::vector<Complex> samples;
  Grid grid;
  double t = 0.0;
  std::string label;

  double norm() const;
};

struct Overlap {
  Complex value;
  bool cross_time = false;  // Eq-of-motion times differ: non-orthogonal regime
};

struct CoherentParams {
  Complex alpha;  // units sqrt(hbar w)
  double modulus() const { return std::abs(alpha); }
  double theta() const { return std::arg(alpha); }
};

struct Moments {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double cov_xp = 0.0;
};

// Physicists' Hermite polynomial by the three-term recurrence. Guarded
// against overflow: use the weighted form above n = 200.
double hermite(int n, double z);

// Gaussian-weighted, unit-normalized Hermite function
// e^{-z^2/2} H_n(z) / sqrt(2^n n! sqrt(pi)), stable at any n.
double hermite_weighted(int n, double z);

// Stationary oscillator eigenfunction Phi_n(X).
double phi_stationary(int n, double X, const PhysConstants& consts);

// Deformed eigenfunction varphi_n(x,t) = A^{-1}(x,t) Phi_n(X(x,t)).
Complex varphi(int n, double x, const Frame& f, const PhysConstants& consts);

// Same function via the fully expanded closed form; kept as an
// independent route for cross-checking the composed path.
Complex varphi_expanded(int n, double x, const Frame& f,
                        const PhysConstants& consts);

// psi_n = e^{-i w (n + 1/2) tau} varphi_n.
Complex psi(int n, double x, const Frame& f, const PhysConstants& consts);

// Grid sampling (OpenMP map over points; serial variants are bit-identical).
QuantumState sample_varphi(int n, double t, const TransformData& data,
                           const PhysConstants& consts, const Grid& grid,
                           bool parallel = true);
QuantumState sample_psi(int n, double t, const TransformData& data,
                        const PhysConstants& consts, const Grid& grid,
                        bool parallel = true);

// Trapezoid quadrature of f* g on the shared grid; superalgebraically
// accurate for smooth states that decay below roundoff at the edges.
Overlap inner_product(const QuantumState& f, const QuantumState& g);

// Normalized superposition sum c_n |states_n>; coefficients must satisfy
// sum |c_n|^2 = 1 to 1e-10 unless normalize_on_demand is set.
QuantumState superpose(std::span<const Complex> coeffs,
                       std::span<const QuantumState> states,
                       bool normalize_on_demand = false);

// Gaussian coherent wavepacket with time-dependent width (closed form).
QuantumState coherent_wavepacket(const CoherentParams& alpha, double t,
                                 const TransformData& data,
                                 const PhysConstants& consts, const Grid& grid);

// Coherent state as a truncated ladder series over varphi_n.
QuantumState coherent_series(const CoherentParams& alpha, double t,
                             int n_trunc, const TransformData& data,
                             const PhysConstants& consts, const Grid& grid);

// Poisson weight P_n = |<varphi_n|alpha>|^2.
double poisson_weight(const CoherentParams& alpha, int n,
                      const PhysConstants& consts);

// Moments from the sampled state (derivatives by 4th-order stencils).
Moments grid_moments(const QuantumState& state, const PhysConstants& consts);

// Closed-form moments of the coherent state.
Moments coherent_moments(const CoherentParams& alpha, const Frame& f,
                         const PhysConstants& consts);
double coherent_mean_x(const CoherentParams& alpha, const Frame& f,
                       const PhysConstants& consts);
double coherent_mean_p(const CoherentParams& alpha, const Frame& f,
                       const PhysConstants& consts);

// Global phase exp[-(i/hbar) int_{t_ref}^t V0 dt'] removing a
// time-dependent zero-point energy.
Complex zero_point_phase(const std::function<double(double)>& V0, double t,
                         double t_ref, double hbar);

// Grid sized to cover the moving support: half-width
// max|gamma| + margin_sigmas * max(sigma) * sqrt(hbar (2 n_max + 1)/(2 m w)).
Grid make_grid(const TransformData& data, const PhysConstants& consts,
               int n_max, double t_start, double t_end, int points = 2048,
               double margin_sigmas = 8.0);

}  // namespace parosc
