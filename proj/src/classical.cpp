#include "parosc/classical.hpp"

#include <cmath>

#include "parosc/ode.hpp"
#include "parosc/quadrature.hpp"

namespace parosc {

FrequencyProfile FrequencyProfile::zero() {
  FrequencyProfile p;
  p.kind_ = Kind::Zero;
  return p;
}

FrequencyProfile FrequencyProfile::constant(double omega0) {
  if (!(omega0 > 0.0))
    throw std::domain_error("constant profile requires Omega0 > 0");
  FrequencyProfile p;
  p.kind_ = Kind::Constant;
  p.omega0_ = omega0;
  return p;
}

FrequencyProfile FrequencyProfile::tanh_step(double omega1, double omega2,
                                             double k) {
  if (!(omega1 > omega2 && omega2 > 0.0 && k > 0.0))
    throw std::domain_error("tanh profile requires Omega1 > Omega2 > 0, k > 0");
  FrequencyProfile p;
  p.kind_ = Kind::TanhStep;
  p.omega1_ = omega1;
  p.omega2_ = omega2;
  p.k_ = k;
  return p;
}

FrequencyProfile FrequencyProfile::custom(
    std::function<double(double)> omega_sq) {
  FrequencyProfile p;
  p.kind_ = Kind::Custom;
  p.custom_ = std::move(omega_sq);
  return p;
}

double FrequencyProfile::omega_sq(double t) const {
  double v = 0.0;
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return omega0_ * omega0_;
    case Kind::TanhStep:
      v = omega1_ + omega2_ * std::tanh(k_ * t);
      break;
    case Kind::Custom:
      v = custom_(t);
      break;
  }
  if (!std::isfinite(v))
    throw std::domain_error("Omega^2(t) is not finite on the requested span");
  return v;
}

namespace {

ClassicalPair numeric_pair(const FrequencyProfile& profile, double t0,
                           double t_min, double t_max, double W0,
                           InitialConditions ic1, InitialConditions ic2) {
  OdeRhs rhs = [profile](double t, const std::vector<double>& y,
                         std::vector<double>& dy) {
    const double w2 = profile.omega_sq(t);
    dy[0] = y[1];
    dy[1] = -w2 * y[0];
    dy[2] = y[3];
    dy[3] = -w2 * y[2];
  };
  std::vector<double> y0 = {ic1.q, ic1.qdot, ic2.q, ic2.qdot};

  auto fwd = std::make_shared<DenseOdeSolution>(
      integrate_ode(rhs, y0, t0, t_max));
  auto bwd = std::make_shared<DenseOdeSolution>(
      integrate_ode(rhs, y0, t0, t_min));

  auto component = [fwd, bwd, t0](std::size_t i) {
    return std::function<double(double)>([fwd, bwd, t0, i](double t) {
      return (t >= t0) ? fwd->value(i, t) : bwd->value(i, t);
    });
  };

  ClassicalPair pair;
  pair.q1 = {component(0), component(1)};
  pair.q2 = {component(2), component(3)};
  pair.W0 = ic1.q * ic2.qdot - ic1.qdot * ic2.q;
  pair.t_min = t_min;
  pair.t_max = t_max;

  // Wronskian drift monitor over the span.
  const int nsamp = 256;
  for (int i = 0; i <= nsamp; ++i) {
    const double t = t_min + (t_max - t_min) * i / nsamp;
    if (std::abs(pair.wronskian(t) - pair.W0) > 1e-6 * std::abs(pair.W0))
      throw AccuracyError("Wronskian drift above 1e-6: integration accuracy");
  }
  (void)W0;
  return pair;
}

}  // namespace

ClassicalPair solve_homogeneous(const FrequencyProfile& profile, double t0,
                                double t_min, double t_max, double W0,
                                std::optional<InitialConditions> ic1,
                                std::optional<InitialConditions> ic2) {
  if (!(t_min <= t0 && t0 <= t_max) || !std::isfinite(t_min) ||
      !std::isfinite(t_max))
    throw std::domain_error("span must be finite and contain t0");
  const InitialConditions c1 = ic1.value_or(InitialConditions{1.0, 0.0});
  const InitialConditions c2 = ic2.value_or(InitialConditions{0.0, W0});
  if (c1.q * c2.qdot - c1.qdot * c2.q == 0.0)
    throw std::domain_error("initial conditions give a degenerate pair");
  return numeric_pair(profile, t0, t_min, t_max, W0, c1, c2);
}

TanhStepConstants tanh_step_constants(const FrequencyProfile& profile) {
  if (profile.kind() != FrequencyProfile::Kind::TanhStep)
    throw std::domain_error("not a tanh-step profile");
  const double o1 = profile.omega1(), o2 = profile.omega2(),
               k = profile.steepness();
  const double mu = std::sqrt((o1 + std::sqrt(o1 * o1 - o2 * o2)) / 2.0) / k;
  const double gp = mu + o2 / (2.0 * k * k * mu);
  const double gm = mu - o2 / (2.0 * k * k * mu);
  return {mu, gp, gm};
}

namespace {

struct TanhEval {
  Complex value;
  Complex deriv;  // d/dt
};

TanhEval tanh_step_eval(const FrequencyProfile& profile, double t) {
  const auto [mu, gp, gm] = tanh_step_constants(profile);
  const double k = profile.steepness();
  const double z = std::tanh(k * t);
  const double one_m = 1.0 - z, one_p = 1.0 + z;
  const Complex i(0.0, 1.0);

  const Complex a = -i * mu, b = 1.0 - i * mu, c = 1.0 - i * gp;
  const Complex u = 0.5 * one_m;
  const Complex F = hyp2f1(a, b, c, u);
  const Complex dF = hyp2f1_derivative(a, b, c, u);

  // prefactor (1-z)^{-i g+/2} (1+z)^{-i g-/2}; exponents are pure
  // imaginary so the modulus is 1.
  const Complex P = std::exp(-0.5 * i * (gp * std::log(one_m) +
                                         gm * std::log(one_p)));
  const Complex dP_dz = P * (0.5 * i * gp / one_m - 0.5 * i * gm / one_p);

  const double dz_dt = k * (1.0 - z * z);
  TanhEval out;
  out.value = P * F;
  out.deriv = dz_dt * (dP_dz * F + P * dF * (-0.5));
  return out;
}

}  // namespace

Complex tanh_step_complex_solution(const FrequencyProfile& profile, double t) {
  return tanh_step_eval(profile, t).value;
}

Complex tanh_step_complex_derivative(const FrequencyProfile& profile,
                                     double t) {
  return tanh_step_eval(profile, t).deriv;
}

ClassicalPair analytic_pair(const FrequencyProfile& profile, double t_min,
                            double t_max) {
  ClassicalPair pair;
  pair.t_min = t_min;
  pair.t_max = t_max;
  switch (profile.kind()) {
    case FrequencyProfile::Kind::Zero:
      pair.q1 = {[](double) { return 1.0; }, [](double) { return 0.0; }};
      pair.q2 = {[](double t) { return t; }, [](double) { return 1.0; }};
      pair.W0 = 1.0;
      return pair;
    case FrequencyProfile::Kind::Constant: {
      const double om = profile.omega0();
      pair.q1 = {[om](double t) { return std::cos(om * t); },
                 [om](double t) { return -om * std::sin(om * t); }};
      pair.q2 = {[om](double t) { return std::sin(om * t); },
                 [om](double t) { return om * std::cos(om * t); }};
      pair.W0 = om;
      return pair;
    }
    case FrequencyProfile::Kind::TanhStep: {
      const auto consts = tanh_step_constants(profile);
      FrequencyProfile p = profile;
      pair.q1 = {[p](double t) { return tanh_step_eval(p, t).value.real(); },
                 [p](double t) { return tanh_step_eval(p, t).deriv.real(); }};
      pair.q2 = {[p](double t) { return tanh_step_eval(p, t).value.imag(); },
                 [p](double t) { return tanh_step_eval(p, t).deriv.imag(); }};
      pair.W0 = profile.steepness() * consts.g_plus;
      return pair;
    }
    case FrequencyProfile::Kind::Custom:
      throw std::invalid_argument(
          "no closed form for a custom profile; use solve_homogeneous");
  }
  throw std::logic_error("unreachable");
}

RealFunc particular_solution(const DrivingForce& force,
                             const ClassicalPair& pair, double mass,
                             double t_ref) {
  if (pair.W0 == 0.0)
    throw std::domain_error("degenerate pair: W0 = 0");
  if (force.is_zero())
    return {[](double) { return 0.0; }, [](double) { return 0.0; }};

  const double scale = 1.0 / (mass * pair.W0);
  // 1e-10 correction tolerance: the integrand's own roundoff noise makes
  // anything tighter unreachable for the special-function solution pairs.
  auto I1 = cached_antiderivative(
      [force, q1 = pair.q1.value](double t) { return q1(t) * force(t); },
      t_ref, pair.t_min, pair.t_max, 1e-10);
  auto I2 = cached_antiderivative(
      [force, q2 = pair.q2.value](double t) { return q2(t) * force(t); },
      t_ref, pair.t_min, pair.t_max, 1e-10);
  RealFunc out;
  out.value = [pair, I1, I2, scale](double t) {
    return scale * (pair.q2.value(t) * I1(t) - pair.q1.value(t) * I2(t));
  };
  // The q-derivative terms cancel: d/dt gamma_p keeps only q' factors.
  out.deriv = [pair, I1, I2, scale](double t) {
    return scale * (pair.q2.deriv(t) * I1(t) - pair.q1.deriv(t) * I2(t));
  };
  return out;
}

}  // namespace parosc
