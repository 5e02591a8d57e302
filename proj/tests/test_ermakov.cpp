#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "parosc/ermakov.hpp"

using namespace parosc;

namespace {

TransformData make_data(const FrequencyProfile& prof, double a = 1.0,
                        double c = 1.0, double w = 1.0, double g1 = 0.0,
                        double g2 = 0.0, DrivingForce force = {}) {
  auto pair = analytic_pair(prof, -12.0, 12.0);
  auto params = ErmakovParams::make(a, c, w, pair.W0);
  return TransformData(prof, std::move(force), std::move(pair), params, g1, g2,
                       1.0, 1.0);
}

}  // namespace

TEST_CASE("parameter constraint") {
  const auto p = ErmakovParams::make(1.0, 1.0, 1.0, 2.0);
  CHECK(p.b == doctest::Approx(2.0 * std::sqrt(0.75)).epsilon(1e-14));
  CHECK(ErmakovParams::make(1.0, 1.0, 1.0, 1.0).b == 0.0);
  CHECK_THROWS_AS(ErmakovParams::make(1.0, 1.0, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(ErmakovParams::make(1.0, 1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("free-particle closed forms") {
  const auto data = make_data(FrequencyProfile::zero());
  for (double t : {-5.0, -1.2, 0.0, 0.3, 2.0, 5.0}) {
    const Frame f = data.frame(t);
    CHECK(std::abs(f.sigma - std::sqrt(1.0 + t * t)) < 1e-12);
    CHECK(std::abs(f.sigma_dot - t / std::sqrt(1.0 + t * t)) < 1e-12);
    CHECK(std::abs(f.tau - std::atan(t)) < 1e-10);
    CHECK(f.gamma == 0.0);
    CHECK(f.xi == 0.0);
  }
}

TEST_CASE("constant profile with matched weights is static") {
  // a = c = w / Omega0 gives the constant width sigma^2 = w / Omega0
  const auto data = make_data(FrequencyProfile::constant(2.0), 0.5, 0.5, 1.0);
  for (double t : {-3.0, 0.0, 1.7}) {
    const Frame f = data.frame(t);
    CHECK(std::abs(f.sigma - std::sqrt(0.5)) < 1e-12);
    CHECK(std::abs(f.sigma_dot) < 1e-11);
    CHECK(std::abs(f.tau - 2.0 * t) < 1e-9);  // dtau/dt = 1/sigma^2
  }
}

TEST_CASE("Ermakov equation holds for the tanh profile") {
  const auto prof = FrequencyProfile::tanh_step(5.0, 3.0, 0.5);
  const auto data = make_data(prof);
  const double h = 2.5e-3;  // 4th-order stencil, sized for ~1e-13 data noise
  auto sig_at = [&](double u) { return data.sigma(u); };
  for (double t : {-6.0, -1.0, 0.0, 0.4, 2.5, 6.0}) {
    const double sig_dd =
        (-sig_at(t + 2 * h) + 16.0 * sig_at(t + h) - 30.0 * sig_at(t) +
         16.0 * sig_at(t - h) - sig_at(t - 2 * h)) /
        (12.0 * h * h);
    const double sig = data.sigma(t);
    CHECK(std::abs(sig_dd + prof.omega_sq(t) * sig - 1.0 / (sig * sig * sig)) <
          1e-6);
    // frame's analytic second derivative against the same stencil
    CHECK(std::abs(data.frame(t).sigma_ddot - sig_dd) < 1e-6);
  }
}

TEST_CASE("tau is the antiderivative of 1/sigma^2") {
  const auto data = make_data(FrequencyProfile::tanh_step(5.0, 3.0, 0.5));
  const double h = 1e-5;
  CHECK(data.tau(0.0) == 0.0);
  for (double t : {-4.0, -0.5, 0.9, 3.3}) {
    const double dtau = (data.tau(t + h) - data.tau(t - h)) / (2.0 * h);
    const double sig = data.sigma(t);
    CHECK(std::abs(dtau * sig * sig - 1.0) < 1e-8);
  }
}

TEST_CASE("arctan closed form of tau matches between q1 zeros") {
  const auto data = make_data(FrequencyProfile::zero());
  // free particle: q1 = 1 never vanishes, so the closed form holds globally
  for (double t : {-4.0, -0.7, 0.0, 1.3, 4.5})
    CHECK(std::abs(tau_closed_form(t, data.pair(), data.params()) -
                   data.tau(t)) < 1e-10);
}

TEST_CASE("trajectory shift obeys the classical equation") {
  const auto prof = FrequencyProfile::constant(1.0);
  DrivingForce force([](double t) { return 0.5 * std::cos(2.0 * t); });
  const auto data =
      make_data(prof, 1.0, 1.0, 1.0, 0.3, -0.2, force);
  const double h = 5e-3;
  auto d1 = [&](auto&& fn) {  // 4th-order first derivative
    return [fn, h](double t) {
      return (fn(t - 2 * h) - 8.0 * fn(t - h) + 8.0 * fn(t + h) -
              fn(t + 2 * h)) /
             (12.0 * h);
    };
  };
  for (double t : {-2.0, 0.6, 3.1}) {
    auto g = [&](double u) { return data.gamma(u); };
    const double g_dd =
        (-g(t + 2 * h) + 16.0 * g(t + h) - 30.0 * g(t) + 16.0 * g(t - h) -
         g(t - 2 * h)) /
        (12.0 * h * h);
    CHECK(std::abs(g_dd + data.gamma(t) - 0.5 * std::cos(2.0 * t)) < 1e-6);
    const Frame f = data.frame(t);
    CHECK(std::abs(f.W - (f.sigma * f.gamma_dot - f.sigma_dot * f.gamma)) <
          1e-12);
    // W' and xi' from the frame against finite differences
    CHECK(std::abs(d1([&](double u) { return data.frame(u).W; })(t) -
                   f.W_dot) < 1e-6);
    CHECK(std::abs(d1([&](double u) { return data.frame(u).xi; })(t) -
                   f.xi_dot) < 1e-6);
  }
}

TEST_CASE("deformation factor magnitude and coordinate map") {
  const auto data = make_data(FrequencyProfile::tanh_step(5.0, 3.0, 0.5));
  const Frame f = data.frame(0.7);
  CHECK(std::abs(map_coordinates(2.0, f) - (2.0 + f.gamma) / f.sigma) <
        1e-15);
  for (double x : {-1.5, 0.0, 2.2})
    CHECK(std::abs(std::abs(a_factor(x, f, 1.0, 1.0)) - std::sqrt(f.sigma)) <
          1e-13);
}

TEST_CASE("potential reconstruction recovers the input potential") {
  DrivingForce force([](double t) { return std::sin(t); });
  const auto prof = FrequencyProfile::tanh_step(5.0, 3.0, 0.5);
  const auto data = make_data(prof, 1.3, 0.9, 1.0, 0.2, 0.1, force);
  for (double t : {-3.0, 0.0, 1.1, 4.0}) {
    const auto terms = reconstruct_potential_terms(t, data);
    CHECK(std::abs(terms.quadratic - 0.5 * prof.omega_sq(t)) < 1e-8);
    CHECK(std::abs(terms.linear - std::sin(t)) < 1e-8);
    CHECK(std::abs(terms.constant) < 1e-8);
    for (double x : {-4.0, 0.5, 3.0}) {
      const double want = 0.5 * prof.omega_sq(t) * x * x + std::sin(t) * x;
      CHECK(std::abs(reconstruct_potential(x, t, data) - want) <
            1e-6 * (1.0 + std::abs(want)));
    }
  }
}
