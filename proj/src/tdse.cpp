#include "parosc/tdse.hpp"

#include <cmath>
#include <stdexcept>

#include "parosc/parallel.hpp"

namespace parosc {
namespace {

constexpr double kWallStart = 1e-10;
constexpr double kWallGrowth = 1e-6;

// Solves the tridiagonal system in place (Thomas algorithm). sub/diag/sup
// are the interior bands; rhs is overwritten with the solution.
void solve_tridiagonal(const std::vector<Complex>& sub,
                       std::vector<Complex> diag,
                       const std::vector<Complex>& sup,
                       std::vector<Complex>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t j = 1; j < n; ++j) {
    const Complex m = sub[j] / diag[j - 1];
    diag[j] -= m * sup[j - 1];
    rhs[j] -= m * rhs[j - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t j = n - 1; j-- > 0;)
    rhs[j] = (rhs[j] - sup[j] * rhs[j + 1]) / diag[j];
}

}  // namespace

Propagator::Propagator(PropagatorConfig cfg) : cfg_(std::move(cfg)) {
  if (!cfg_.omega_sq) throw std::invalid_argument("omega_sq callable not set");
  if (cfg_.dt <= 0.0) throw std::invalid_argument("dt must be positive");
}

double Propagator::potential(double x, double t) const {
  double v = 0.5 * cfg_.m * cfg_.omega_sq(t) * x * x;
  if (cfg_.force) v += cfg_.force(t) * x;
  if (cfg_.v0) v += cfg_.v0(t);
  return v;
}

QuantumState Propagator::evolve(const QuantumState& start, int n_steps) const {
  if (!(start.grid == cfg_.grid))
    throw std::invalid_argument("state grid does not match propagator grid");
  const double wall0 = std::max(std::abs(start.samples.front()),
                                std::abs(start.samples.back()));
  if (wall0 > kWallStart)
    throw AccuracyError("initial state touches the Dirichlet walls");

  const int n = cfg_.grid.n;
  const int ni = n - 2;  // interior points
  const double h = cfg_.grid.h();
  const double kin_d = cfg_.hbar * cfg_.hbar / (cfg_.m * h * h);
  const Complex lam(0.0, cfg_.dt / (2.0 * cfg_.hbar));

  QuantumState state = start;
  const std::size_t nu = std::size_t(ni);
  std::vector<Complex> psi(nu);
  for (int j = 0; j < ni; ++j) psi[std::size_t(j)] = state.samples[std::size_t(j + 1)];

  std::vector<double> v(std::size_t(n), 0.0);
  std::vector<Complex> a_sub(nu), a_diag(nu), a_sup(nu), rhs(nu);

  for (int step = 0; step < n_steps; ++step) {
    const double t_mid = state.t + 0.5 * cfg_.dt;
    for (int j = 0; j < n; ++j) v[std::size_t(j)] = potential(cfg_.grid.x(j), t_mid);

    // Numerov mass matrix M = I + D/12 with D the second-difference
    // stencil; scheme (M + lam(T + M V)) psi' = (M - lam(T + M V)) psi.
    auto band = [&](int j, double sign) {
      const std::size_t u = std::size_t(j);
      a_diag[u] = 10.0 / 12.0 +
                  sign * lam * (kin_d + (10.0 / 12.0) * v[std::size_t(j + 1)]);
      a_sub[u] = (j > 0)
                     ? 1.0 / 12.0 + sign * lam * (-0.5 * kin_d +
                                                  (1.0 / 12.0) * v[u])
                     : Complex(0.0, 0.0);
      a_sup[u] = (j < ni - 1)
                     ? 1.0 / 12.0 + sign * lam * (-0.5 * kin_d +
                                                  (1.0 / 12.0) *
                                                      v[std::size_t(j + 2)])
                     : Complex(0.0, 0.0);
    };

    // rhs = B psi with the minus-sign bands
    const bool wide = cfg_.parallel && ni > 4096;
    auto fill_rhs = [&](long j) {
      band(int(j), -1.0);
      const std::size_t u = std::size_t(j);
      Complex acc = a_diag[u] * psi[u];
      if (j > 0) acc += a_sub[u] * psi[u - 1];
      if (j < ni - 1) acc += a_sup[u] * psi[u + 1];
      rhs[u] = acc;
    };
    if (wide)
      parallel_for(long(ni), fill_rhs);
    else
      serial_for(long(ni), fill_rhs);

    for (int j = 0; j < ni; ++j) band(j, +1.0);
    solve_tridiagonal(a_sub, a_diag, a_sup, rhs);
    psi.swap(rhs);
    state.t += cfg_.dt;

    const double wall = std::max(std::abs(psi.front()), std::abs(psi.back()));
    if (wall > kWallGrowth)
      throw AccuracyError("wavefunction reached the Dirichlet walls at t = " +
                          std::to_string(state.t));
  }

  for (int j = 0; j < ni; ++j) state.samples[std::size_t(j + 1)] = psi[std::size_t(j)];
  state.samples.front() = Complex(0.0, 0.0);
  state.samples.back() = Complex(0.0, 0.0);
  state.label = start.label + " evolved";
  return state;
}

double pde_residual(const std::function<QuantumState(double)>& state_at,
                    double t, double dt_probe, double m, double hbar,
                    const std::function<double(double)>& omega_sq,
                    const std::function<double(double)>& force) {
  const QuantumState s0 = state_at(t);
  const QuantumState sm2 = state_at(t - 2.0 * dt_probe);
  const QuantumState sm1 = state_at(t - dt_probe);
  const QuantumState sp1 = state_at(t + dt_probe);
  const QuantumState sp2 = state_at(t + 2.0 * dt_probe);

  const Grid& g = s0.grid;
  const double h = g.h();
  const double kin = -hbar * hbar / (2.0 * m);
  const double om2 = omega_sq(t);
  const double f_t = force ? force(t) : 0.0;
  const Complex ih(0.0, hbar);

  double worst = 0.0;
  double scale = 0.0;
  for (int j = 2; j < g.n - 2; ++j) {
    const std::size_t u = std::size_t(j);
    const Complex dpsi_dt =
        (sm2.samples[u] - 8.0 * sm1.samples[u] + 8.0 * sp1.samples[u] -
         sp2.samples[u]) /
        (12.0 * dt_probe);
    const Complex d2psi =
        (-s0.samples[u - 2] + 16.0 * s0.samples[u - 1] - 30.0 * s0.samples[u] +
         16.0 * s0.samples[u + 1] - s0.samples[u + 2]) /
        (12.0 * h * h);
    const double x = g.x(j);
    const Complex h_psi =
        kin * d2psi + (0.5 * m * om2 * x * x + f_t * x) * s0.samples[u];
    worst = std::max(worst, std::abs(ih * dpsi_dt - h_psi));
    scale = std::max(scale, std::abs(h_psi));
  }
  if (scale == 0.0) throw AccuracyError("state vanishes on the whole grid");
  return worst / scale;
}

double unitarity_drift(const Propagator& prop, const QuantumState& start,
                       int n_steps, int sample_every) {
  const double n0 = start.norm();
  QuantumState cur = start;
  double worst = 0.0;
  int done = 0;
  while (done < n_steps) {
    const int chunk = std::min(sample_every, n_steps - done);
    cur = prop.evolve(cur, chunk);
    done += chunk;
    worst = std::max(worst, std::abs(cur.norm() - n0));
  }
  return worst;
}

}  // namespace parosc
