#include "parosc/states.hpp"

#include <cmath>
#include <numbers>

#include "parosc/fourier.hpp"
#include "parosc/parallel.hpp"
#include "parosc/quadrature.hpp"

namespace parosc {

namespace {
constexpr double kPi = std::numbers::pi;
const double kQuarticRootPi = std::pow(kPi, -0.25);
}  // namespace

Grid::Grid(double lo, double hi, int points) : x_min(lo), x_max(hi), n(points) {
  if (!(hi > lo)) throw std::domain_error("grid needs x_max > x_min");
  if (points < 64) throw std::domain_error("grid needs at least 64 points");
}

double QuantumState::norm() const {
  const double h = grid.h();
  double s = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    const double w = (j == 0 || j == grid.n - 1) ? 0.5 : 1.0;
    s += w * std::norm(samples[j]);
  }
  return std::sqrt(s * h);
}

double hermite(int n, double z) {
  if (n < 0) throw std::domain_error("hermite: n must be nonnegative");
  if (n > 200)
    throw std::overflow_error(
        "hermite: n > 200 overflows; use hermite_weighted");
  double hm = 0.0, hk = 1.0;  // H_{-1}, H_0
  for (int k = 0; k < n; ++k) {
    const double hp = 2.0 * z * hk - 2.0 * k * hm;
    hm = hk;
    hk = hp;
  }
  return hk;
}

double hermite_weighted(int n, double z) {
  if (n < 0) throw std::domain_error("hermite_weighted: n must be nonnegative");
  double hm = 0.0;
  double hk = kQuarticRootPi * std::exp(-0.5 * z * z);
  for (int k = 0; k < n; ++k) {
    const double hp =
        std::sqrt(2.0 / (k + 1)) * z * hk - std::sqrt(double(k) / (k + 1)) * hm;
    hm = hk;
    hk = hp;
  }
  return hk;
}

double phi_stationary(int n, double X, const PhysConstants& consts) {
  const double s = std::sqrt(consts.m * consts.w / consts.hbar);
  return std::sqrt(s) * hermite_weighted(n, s * X);
}

Complex varphi(int n, double x, const Frame& f, const PhysConstants& consts) {
  const double X = map_coordinates(x, f);
  const double phase =
      consts.m / consts.hbar *
      (f.sigma_dot * x * x / (2.0 * f.sigma) - f.W * x / f.sigma - f.xi);
  return phi_stationary(n, X, consts) / std::sqrt(f.sigma) *
         std::exp(Complex(0.0, phase));
}

Complex varphi_expanded(int n, double x, const Frame& f,
                        const PhysConstants& consts) {
  const double m = consts.m, hbar = consts.hbar, w = consts.w;
  const double s = f.sigma, s2 = s * s;
  const Complex expo =
      m / hbar *
      (Complex(-w / s2, f.sigma_dot / s) * 0.5 * x * x -
       Complex(w * f.gamma / s2, f.W / s) * x +
       Complex(-0.5 * w * f.gamma * f.gamma / s2, -f.xi));
  const double z = std::sqrt(m * w / hbar) * (x + f.gamma) / s;
  double nfact = 1.0, pow2 = 1.0;
  for (int k = 1; k <= n; ++k) {
    nfact *= k;
    pow2 *= 2.0;
  }
  const double norm =
      std::sqrt(std::sqrt(m * w / (kPi * hbar)) / (pow2 * nfact));
  return norm / std::sqrt(s) * std::exp(expo) * hermite(n, z);
}

Complex psi(int n, double x, const Frame& f, const PhysConstants& consts) {
  const Complex phase =
      std::exp(Complex(0.0, -consts.w * (n + 0.5) * f.tau));
  return phase * varphi(n, x, f, consts);
}

namespace {

template <typename PointFn>
QuantumState sample_state(double t, const Grid& grid, bool parallel,
                          std::string label, const PointFn& fn) {
  QuantumState st;
  st.grid = grid;
  st.t = t;
  st.label = std::move(label);
  st.samples.resize(grid.n);
  auto body = [&](long j) { st.samples[j] = fn(grid.x(int(j))); };
  if (parallel)
    parallel_for(grid.n, body);
  else
    serial_for(grid.n, body);
  return st;
}

}  // namespace

QuantumState sample_varphi(int n, double t, const TransformData& data,
                           const PhysConstants& consts, const Grid& grid,
                           bool parallel) {
  const Frame f = data.frame(t);
  return sample_state(t, grid, parallel, "varphi_" + std::to_string(n),
                      [&](double x) { return varphi(n, x, f, consts); });
}

QuantumState sample_psi(int n, double t, const TransformData& data,
                        const PhysConstants& consts, const Grid& grid,
                        bool parallel) {
  const Frame f = data.frame(t);
  return sample_state(t, grid, parallel, "psi_" + std::to_string(n),
                      [&](double x) { return psi(n, x, f, consts); });
}

Overlap inner_product(const QuantumState& f, const QuantumState& g) {
  if (!(f.grid == g.grid))
    throw std::invalid_argument("inner product requires a shared grid");
  const double h = f.grid.h();
  Complex s = 0.0;
  for (int j = 0; j < f.grid.n; ++j) {
    const double w = (j == 0 || j == f.grid.n - 1) ? 0.5 : 1.0;
    s += w * std::conj(f.samples[j]) * g.samples[j];
  }
  Overlap out;
  out.value = s * h;
  out.cross_time = f.t != g.t;
  return out;
}

QuantumState superpose(std::span<const Complex> coeffs,
                       std::span<const QuantumState> states,
                       bool normalize_on_demand) {
  if (coeffs.size() != states.size() || states.empty())
    throw std::invalid_argument("superpose: coefficient/state count mismatch");
  double csum = 0.0;
  for (const Complex& c : coeffs) csum += std::norm(c);
  if (!normalize_on_demand && std::abs(csum - 1.0) > 1e-10)
    throw std::invalid_argument("superpose: coefficients not normalized");
  const double scale = 1.0 / std::sqrt(csum);

  QuantumState out = states[0];
  out.label = "superposition";
  for (int j = 0; j < out.grid.n; ++j) out.samples[j] = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (!(states[k].grid == out.grid) || states[k].t != out.t)
      throw std::invalid_argument("superpose: states on different grids/times");
    for (int j = 0; j < out.grid.n; ++j)
      out.samples[j] += scale * coeffs[k] * states[k].samples[j];
  }
  return out;
}

double poisson_weight(const CoherentParams& alpha, int n,
                      const PhysConstants& consts) {
  const double lambda = std::norm(alpha.alpha) / (consts.hbar * consts.w);
  double logp = -lambda + n * std::log(lambda > 0 ? lambda : 1.0);
  for (int k = 2; k <= n; ++k) logp -= std::log(double(k));
  return (lambda == 0.0) ? (n == 0 ? 1.0 : 0.0) : std::exp(logp);
}

double coherent_mean_x(const CoherentParams& alpha, const Frame& f,
                       const PhysConstants& consts) {
  const Complex rot = alpha.alpha * std::exp(Complex(0.0, -consts.w * f.tau));
  return std::sqrt(2.0 / consts.m) * f.sigma / consts.w * rot.real() - f.gamma;
}

double coherent_mean_p(const CoherentParams& alpha, const Frame& f,
                       const PhysConstants& consts) {
  const Complex rot = alpha.alpha * std::exp(Complex(0.0, -consts.w * f.tau));
  return std::sqrt(2.0 * consts.m) *
             (f.sigma_dot / consts.w * rot.real() + rot.imag() / f.sigma) -
         consts.m * f.gamma_dot;
}

Moments coherent_moments(const CoherentParams& alpha, const Frame& f,
                         const PhysConstants& consts) {
  const double hbar = consts.hbar, m = consts.m, w = consts.w;
  Moments mom;
  mom.mean_x = coherent_mean_x(alpha, f, consts);
  mom.mean_p = coherent_mean_p(alpha, f, consts);
  mom.var_x = hbar * f.sigma * f.sigma / (2.0 * m * w);
  mom.var_p = 0.5 * hbar * m * w *
              (f.sigma_dot * f.sigma_dot / (w * w) +
               1.0 / (f.sigma * f.sigma));
  mom.cov_xp = 0.5 * hbar * f.sigma * f.sigma_dot / w;
  return mom;
}

QuantumState coherent_wavepacket(const CoherentParams& alpha, double t,
                                 const TransformData& data,
                                 const PhysConstants& consts,
                                 const Grid& grid) {
  const Frame f = data.frame(t);
  const double m = consts.m, hbar = consts.hbar, w = consts.w;

  const Complex beta =
      alpha.alpha / std::sqrt(hbar * w) * std::exp(Complex(0.0, -w * f.tau));
  const double mean_X = std::sqrt(2.0 * hbar / (m * w)) * beta.real();
  const double mean_P = std::sqrt(2.0 * hbar * m * w) * beta.imag();
  const double mean_x = coherent_mean_x(alpha, f, consts);
  const double mean_p = coherent_mean_p(alpha, f, consts);
  const double var_x = hbar * f.sigma * f.sigma / (2.0 * m * w);

  // Global phase from composing the stationary Glauber packet with the
  // inverse deformation factor.
  const double theta = mean_P * f.gamma / (hbar * f.sigma) -
                       mean_X * mean_P / (2.0 * hbar) - 0.5 * w * f.tau -
                       m * f.xi / hbar -
                       m * f.sigma_dot * mean_x * mean_x /
                           (2.0 * hbar * f.sigma);
  const Complex quad(-0.25 / var_x, 0.5 * m * f.sigma_dot / (hbar * f.sigma));
  const double prefactor = std::pow(2.0 * kPi * var_x, -0.25);

  return sample_state(t, grid, true, "coherent", [&](double x) {
    const double dx = x - mean_x;
    const Complex expo =
        quad * dx * dx + Complex(0.0, mean_p * x / hbar + theta);
    return prefactor * std::exp(expo);
  });
}

QuantumState coherent_series(const CoherentParams& alpha, double t,
                             int n_trunc, const TransformData& data,
                             const PhysConstants& consts, const Grid& grid) {
  const Frame f = data.frame(t);
  const double hbar = consts.hbar, w = consts.w;
  const double lambda = std::norm(alpha.alpha) / (hbar * w);

  // Poisson tail bound for the truncation.
  double cum = 0.0;
  for (int n = 0; n <= n_trunc; ++n) cum += poisson_weight(alpha, n, consts);
  if (1.0 - cum > 1e-14)
    throw AccuracyError("coherent series truncation: Poisson tail > 1e-14");

  const Complex beta =
      alpha.alpha / std::sqrt(hbar * w) * std::exp(Complex(0.0, -w * f.tau));
  std::vector<Complex> coeff(n_trunc + 1);
  Complex term = std::exp(Complex(0.0, -0.5 * w * f.tau)) *
                 std::exp(-0.5 * lambda);
  coeff[0] = term;
  for (int n = 1; n <= n_trunc; ++n) {
    term *= beta / std::sqrt(double(n));
    coeff[n] = term;
  }

  const double s = std::sqrt(consts.m * consts.w / consts.hbar);
  QuantumState st;
  st.grid = grid;
  st.t = t;
  st.label = "coherent_series";
  st.samples.resize(grid.n);
  parallel_for(grid.n, [&](long j) {
    const double x = grid.x(int(j));
    const double z = s * map_coordinates(x, f);
    // accumulate sum_n c_n h_n(z) with the weighted Hermite recurrence
    double hm = 0.0, hk = kQuarticRootPi * std::exp(-0.5 * z * z);
    Complex acc = coeff[0] * hk;
    for (int n = 0; n < n_trunc; ++n) {
      const double hp = std::sqrt(2.0 / (n + 1)) * z * hk -
                        std::sqrt(double(n) / (n + 1)) * hm;
      hm = hk;
      hk = hp;
      acc += coeff[n + 1] * hk;
    }
    const double phase = consts.m / consts.hbar *
                         (f.sigma_dot * x * x / (2.0 * f.sigma) -
                          f.W * x / f.sigma - f.xi);
    st.samples[j] = std::sqrt(s / f.sigma) * std::exp(Complex(0.0, phase)) * acc;
  });
  return st;
}

Moments grid_moments(const QuantumState& state, const PhysConstants& consts) {
  if (std::abs(state.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("grid_moments: state not normalized");
  const int n = state.grid.n;
  const double h = state.grid.h();
  const double hbar = consts.hbar;

  // derivative for the momentum moments: spectral when the grid allows,
  // else a 4th-order stencil with zero-padded neighbors (states decay
  // below roundoff at the edges either way)
  std::vector<Complex> dpsi;
  if (is_pow2(n)) {
    dpsi = spectral_derivative(state.samples, h, 1);
  } else {
    dpsi.resize(std::size_t(n));
    auto at = [&](int j) -> Complex {
      return (j < 0 || j >= n) ? Complex(0.0) : state.samples[j];
    };
    for (int j = 0; j < n; ++j)
      dpsi[j] = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) /
                (12.0 * h);
  }

  double mx = 0.0, mx2 = 0.0, mp = 0.0, mp2 = 0.0, mxp = 0.0;
  for (int j = 0; j < n; ++j) {
    const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    const double x = state.grid.x(j);
    const double dens = std::norm(state.samples[j]);
    const Complex pterm =
        std::conj(state.samples[j]) * Complex(0.0, -hbar) * dpsi[j];
    mx += wj * x * dens;
    mx2 += wj * x * x * dens;
    mp += wj * pterm.real();
    mp2 += wj * hbar * hbar * std::norm(dpsi[j]);
    mxp += wj * x * pterm.real();
  }
  Moments mom;
  mom.mean_x = mx * h;
  mom.mean_p = mp * h;
  mom.var_x = mx2 * h - mom.mean_x * mom.mean_x;
  mom.var_p = mp2 * h - mom.mean_p * mom.mean_p;
  mom.cov_xp = mxp * h - mom.mean_x * mom.mean_p;
  return mom;
}

Complex zero_point_phase(const std::function<double(double)>& V0, double t,
                         double t_ref, double hbar) {
  const double integral = integrate(V0, t_ref, t, 1e-12);
  return std::exp(Complex(0.0, -integral / hbar));
}

Grid make_grid(const TransformData& data, const PhysConstants& consts,
               int n_max, double t_start, double t_end, int points,
               double margin_sigmas) {
  double max_sigma = 0.0, max_gamma = 0.0;
  const int samples = 200;
  for (int i = 0; i <= samples; ++i) {
    const double t = t_start + (t_end - t_start) * i / samples;
    max_sigma = std::max(max_sigma, data.sigma(t));
    max_gamma = std::max(max_gamma, std::abs(data.gamma(t)));
  }
  const double width =
      std::sqrt(consts.hbar * (2.0 * n_max + 1.0) / (2.0 * consts.m * consts.w));
  const double half = max_gamma + margin_sigmas * max_sigma * width;
  return Grid(-half, half, points);
}

}  // namespace parosc
