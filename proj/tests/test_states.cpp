#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "parosc/scenario.hpp"

using namespace parosc;

namespace {

double l2_diff(const QuantumState& a, const QuantumState& b) {
  QuantumState d = a;
  for (std::size_t j = 0; j < d.samples.size(); ++j)
    d.samples[j] -= b.samples[j];
  return d.norm();
}

}  // namespace

TEST_CASE("Hermite polynomials") {
  CHECK(hermite(0, 0.7) == 1.0);
  CHECK(hermite(1, 0.7) == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(hermite(4, 1.0) == doctest::Approx(-20.0).epsilon(1e-14));
  CHECK(hermite(5, 0.0) == 0.0);
  CHECK_THROWS_AS(hermite(-1, 0.0), std::domain_error);
  CHECK_THROWS_AS(hermite(201, 0.0), std::overflow_error);

  // weighted form against the plain recurrence at moderate order
  const int n = 10;
  const double z = 1.5;
  double log_norm = 0.25 * std::log(M_PI);
  for (int k = 1; k <= n; ++k) log_norm += 0.5 * std::log(2.0 * k);
  const double want =
      hermite(n, z) * std::exp(-0.5 * z * z - log_norm);
  CHECK(hermite_weighted(n, z) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("stationary eigenfunctions") {
  const PhysConstants c;
  CHECK(phi_stationary(0, 0.0, c) ==
        doctest::Approx(0.75112554446494248).epsilon(1e-14));
  // orthonormality under the trapezoid rule used everywhere else
  const Grid g(-12.0, 12.0, 1024);
  for (int n : {0, 3, 7}) {
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) {
      const double v = phi_stationary(n, g.x(j), c);
      acc += v * v;
    }
    CHECK(acc * g.h() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("deformed states: two independent formulas agree") {
  const auto run = build_run(preset_scenario("tanh_step"));
  const PhysConstants c = run.consts;
  for (double t : {-2.0, 0.0, 0.8}) {
    const Frame f = run.data->frame(t);
    for (int n : {0, 1, 4})
      for (double x : {-1.3, 0.0, 0.6, 2.1})
        CHECK(std::abs(varphi(n, x, f, c) - varphi_expanded(n, x, f, c)) <
              1e-12);
  }
}

TEST_CASE("orthonormality of the deformed basis") {
  const auto run = build_run(preset_scenario("tanh_step"));
  for (double t : {-3.0, 0.0, 1.7}) {
    std::vector<QuantumState> basis;
    for (int n = 0; n <= 8; ++n)
      basis.push_back(sample_varphi(n, t, *run.data, run.consts, run.grid));
    for (int i = 0; i <= 8; ++i)
      for (int j = i; j <= 8; ++j) {
        const Complex g = inner_product(basis[i], basis[j]).value;
        const double want = (i == j) ? 1.0 : 0.0;
        CHECK(std::abs(g - want) < 1e-8);
      }
  }
}

TEST_CASE("node count and parity") {
  // gamma = 0, so the deformed states keep the parity of Phi_n
  const auto run = build_run(preset_scenario("free_particle"));
  const QuantumState s3 = sample_psi(3, 0.9, *run.data, run.consts, run.grid);
  std::vector<double> dens(s3.samples.size());
  double peak = 0.0;
  for (std::size_t j = 0; j < dens.size(); ++j) {
    dens[j] = std::norm(s3.samples[j]);
    peak = std::max(peak, dens[j]);
  }
  // three nodes split |psi_3|^2 into four lobes
  int lobes = 0;
  for (std::size_t j = 1; j + 1 < dens.size(); ++j)
    if (dens[j] > dens[j - 1] && dens[j] >= dens[j + 1] &&
        dens[j] > 0.05 * peak)
      ++lobes;
  CHECK(lobes == 4);
  // even mode at the same time: symmetric density
  const QuantumState s2 = sample_psi(2, 0.9, *run.data, run.consts, run.grid);
  for (int j = 0; j < run.grid.n / 2; j += 64)
    CHECK(std::abs(std::norm(s2.samples[std::size_t(j)]) -
                   std::norm(s2.samples[std::size_t(run.grid.n - 1 - j)])) <
          1e-10);
}

TEST_CASE("superposition handles coefficient normalization") {
  const auto run = build_run(preset_scenario("constant"));
  std::vector<QuantumState> basis;
  for (int n = 0; n < 2; ++n)
    basis.push_back(sample_varphi(n, 0.3, *run.data, run.consts, run.grid));
  const Complex good[] = {Complex(M_SQRT1_2, 0), Complex(0, M_SQRT1_2)};
  CHECK(superpose(good, basis).norm() == doctest::Approx(1.0).epsilon(1e-10));
  const Complex bad[] = {Complex(1.0, 0), Complex(1.0, 0)};
  CHECK_THROWS_AS(superpose(bad, basis), std::invalid_argument);
  CHECK(superpose(bad, basis, true).norm() ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Poisson weights") {
  const PhysConstants c;
  const CoherentParams alpha{Complex(1.0, 0.0)};
  CHECK(poisson_weight(alpha, 0, c) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  double total = 0.0;
  for (int n = 0; n < 40; ++n) total += poisson_weight(alpha, n, c);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

  // weights equal the grid-projected overlaps
  const auto run = build_run(preset_scenario("tanh_step"));
  const double t = 0.6;
  const QuantumState pack =
      coherent_wavepacket(alpha, t, *run.data, run.consts, run.grid);
  for (int n = 0; n < 5; ++n) {
    const QuantumState phi =
        sample_varphi(n, t, *run.data, run.consts, run.grid);
    CHECK(std::abs(std::norm(inner_product(phi, pack).value) -
                   poisson_weight(alpha, n, run.consts)) < 1e-8);
  }
}

TEST_CASE("coherent wavepacket equals its ladder series") {
  const auto run = build_run(preset_scenario("tanh_step"));
  const CoherentParams alpha{Complex(1.2, -0.7)};
  for (double t : {-1.5, 0.0, 2.0}) {
    const QuantumState pack =
        coherent_wavepacket(alpha, t, *run.data, run.consts, run.grid);
    const QuantumState series =
        coherent_series(alpha, t, 60, *run.data, run.consts, run.grid);
    CHECK(pack.norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(l2_diff(pack, series) < 1e-6);
  }
  CHECK_THROWS_AS(
      coherent_series({Complex(6.0, 0.0)}, 0.0, 10, *run.data, run.consts,
                      run.grid),
      AccuracyError);
}

TEST_CASE("moments: closed form vs grid and uncertainty relations") {
  const auto run = build_run(preset_scenario("tanh_step"));
  const CoherentParams alpha{Complex(1.0, 0.5)};
  const double hbar = run.consts.hbar;
  for (double t : {-2.2, 0.0, 1.4}) {
    const Frame f = run.data->frame(t);
    const Moments exact = coherent_moments(alpha, f, run.consts);
    // Schrodinger-Robertson equality, closed form
    CHECK(std::abs(exact.var_x * exact.var_p - exact.cov_xp * exact.cov_xp -
                   0.25 * hbar * hbar) < 1e-10);
    const QuantumState pack =
        coherent_wavepacket(alpha, t, *run.data, run.consts, run.grid);
    const Moments grid = grid_moments(pack, run.consts);
    CHECK(std::abs(grid.mean_x - exact.mean_x) < 1e-6);
    CHECK(std::abs(grid.mean_p - exact.mean_p) < 1e-6);
    CHECK(std::abs(grid.var_x - exact.var_x) < 1e-6);
    CHECK(std::abs(grid.var_p - exact.var_p) < 1e-5);
    CHECK(std::abs(grid.cov_xp - exact.cov_xp) < 1e-6);
  }
}

TEST_CASE("Ehrenfest relation for the coherent trajectory") {
  const auto run = build_run(preset_scenario("tanh_step"));
  const CoherentParams alpha{Complex(1.5, 0.0)};
  const double h = 1e-5;
  for (double t : {-1.0, 0.5, 2.3}) {
    const double dxdt =
        (coherent_mean_x(alpha, run.data->frame(t + h), run.consts) -
         coherent_mean_x(alpha, run.data->frame(t - h), run.consts)) /
        (2.0 * h);
    const double p = coherent_mean_p(alpha, run.data->frame(t), run.consts);
    CHECK(std::abs(p - run.consts.m * dxdt) < 1e-5);
  }
}

TEST_CASE("mean position solves the classical equation of motion") {
  const auto run = build_run(preset_scenario("tanh_step"));
  const CoherentParams alpha{Complex(0.8, 0.3)};
  const double h = 1e-4;
  for (double t : {-2.0, 0.2, 1.8}) {
    auto mean = [&](double u) {
      return coherent_mean_x(alpha, run.data->frame(u), run.consts);
    };
    const double acc = (mean(t + h) - 2.0 * mean(t) + mean(t - h)) / (h * h);
    CHECK(std::abs(acc + run.profile.omega_sq(t) * mean(t)) < 1e-5);
  }
}

TEST_CASE("zero-point phase accumulates the potential integral") {
  const Complex ph =
      zero_point_phase([](double t) { return std::sin(t); }, 2.0, 0.0, 1.0);
  const Complex want = std::exp(Complex(0.0, -(1.0 - std::cos(2.0))));
  CHECK(std::abs(ph - want) < 1e-10);
}

TEST_CASE("norm is conserved in time") {
  const auto run = build_run(preset_scenario("tanh_step"));
  for (double t : {-4.0, 0.0, 1.1, 5.0})
    CHECK(sample_psi(2, t, *run.data, run.consts, run.grid).norm() ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("grid construction guards") {
  CHECK_THROWS_AS(Grid(-1.0, 1.0, 32), std::domain_error);
  CHECK_THROWS_AS(Grid(1.0, -1.0, 128), std::domain_error);
  const auto run = build_run(preset_scenario("tanh_step"));
  // sampled states must decay below roundoff at the edges
  const QuantumState s = sample_varphi(8, 0.0, *run.data, run.consts, run.grid);
  CHECK(std::abs(s.samples.front()) < 1e-12);
  CHECK(std::abs(s.samples.back()) < 1e-12);
}
