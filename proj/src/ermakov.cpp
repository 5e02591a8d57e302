#include "parosc/ermakov.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "parosc/ode.hpp"
#include "parosc/quadrature.hpp"

namespace parosc {

ErmakovParams ErmakovParams::make(double a, double c, double w, double W0) {
  if (!(a >= 0.0 && c >= 0.0))
    throw std::domain_error("Ermakov parameters a, c must be nonnegative");
  if (!(w > 0.0)) throw std::domain_error("reference frequency w must be > 0");
  if (W0 == 0.0) throw std::domain_error("degenerate pair: W0 = 0");
  const double d = a * c - w * w / (W0 * W0);
  if (d < -1e-12 * std::max(1.0, a * c))
    throw std::domain_error("constraint violated: need ac >= w^2/W0^2");
  ErmakovParams p;
  p.a = a;
  p.c = c;
  p.w = w;
  p.W0 = W0;
  p.b = 2.0 * std::sqrt(std::max(d, 0.0));
  return p;
}

RealFunc build_sigma(const ClassicalPair& pair, const ErmakovParams& params) {
  const double a = params.a, b = params.b, c = params.c;
  auto s2 = [pair, a, b, c](double t) {
    const double q1 = pair.q1.value(t), q2 = pair.q2.value(t);
    return a * q1 * q1 + b * q1 * q2 + c * q2 * q2;
  };
  RealFunc out;
  out.value = [s2](double t) {
    const double v = s2(t);
    if (!(v > 0.0))
      throw std::logic_error("sigma^2 <= 0: internal consistency failure");
    return std::sqrt(v);
  };
  out.deriv = [pair, s2, a, b, c](double t) {
    const double q1 = pair.q1.value(t), q2 = pair.q2.value(t);
    const double d1 = pair.q1.deriv(t), d2 = pair.q2.deriv(t);
    const double ds2 = 2.0 * a * q1 * d1 + b * (d1 * q2 + q1 * d2) +
                       2.0 * c * q2 * d2;
    return 0.5 * ds2 / std::sqrt(s2(t));
  };
  return out;
}

std::function<double(double)> build_tau(const RealFunc& sigma, double t_ref) {
  auto sv = sigma.value;
  return [sv, t_ref](double t) {
    return integrate(
        [&](double s) {
          const double sg = sv(s);
          return 1.0 / (sg * sg);
        },
        t_ref, t, 1e-12);
  };
}

RealFunc build_gamma(const ClassicalPair& pair, double gamma1, double gamma2,
                     const RealFunc& gamma_p) {
  RealFunc out;
  out.value = [pair, gamma1, gamma2, gp = gamma_p.value](double t) {
    return gamma1 * pair.q1.value(t) + gamma2 * pair.q2.value(t) + gp(t);
  };
  out.deriv = [pair, gamma1, gamma2, gd = gamma_p.deriv](double t) {
    return gamma1 * pair.q1.deriv(t) + gamma2 * pair.q2.deriv(t) + gd(t);
  };
  return out;
}

std::function<double(double)> build_xi(const RealFunc& sigma,
                                       const RealFunc& gamma,
                                       const DrivingForce& force, double mass,
                                       double t_ref) {
  return [sigma, gamma, force, mass, t_ref](double t) {
    const double s = sigma.value(t), sd = sigma.deriv(t);
    const double g = gamma.value(t), gd = gamma.deriv(t);
    const double W = s * gd - sd * g;
    double drive = 0.0;
    if (!force.is_zero())
      drive = integrate([&](double u) { return force(u) * gamma.value(u); },
                        t_ref, t, 1e-12) /
              (2.0 * mass);
    return g * W / (2.0 * s) - drive;
  };
}

double tau_closed_form(double t, const ClassicalPair& pair,
                       const ErmakovParams& params) {
  const double q1 = pair.q1.value(t), q2 = pair.q2.value(t);
  const double w = params.w;
  return std::atan(params.W0 / (2.0 * w) * (params.b + 2.0 * params.c * q2 / q1)) /
         w;
}

TransformData::TransformData(FrequencyProfile profile, DrivingForce force,
                             ClassicalPair pair, ErmakovParams params,
                             double gamma1, double gamma2, double mass,
                             double hbar, double t_ref)
    : profile_(std::move(profile)),
      force_(std::move(force)),
      pair_(std::move(pair)),
      params_(params),
      gamma1_(gamma1),
      gamma2_(gamma2),
      mass_(mass),
      hbar_(hbar),
      t_ref_(t_ref) {
  if (!(mass_ > 0.0 && hbar_ > 0.0))
    throw std::domain_error("physical constants must be positive");
  gamma_p_ = particular_solution(force_, pair_, mass_, t_ref_);
  sigma_ = build_sigma(pair_, params_);
  gamma_ = build_gamma(pair_, gamma1_, gamma2_, gamma_p_);
  tau_ = cached_antiderivative(
      [sv = sigma_.value](double t) {
        const double s = sv(t);
        return 1.0 / (s * s);
      },
      t_ref_, pair_.t_min, pair_.t_max);

  std::function<double(double)> drive;
  if (!force_.is_zero())
    drive = cached_antiderivative(
        [force = force_, g = gamma_.value](double t) { return force(t) * g(t); },
        t_ref_, pair_.t_min, pair_.t_max, 1e-10);
  xi_ = [sigma = sigma_, gamma = gamma_, drive, mass = mass_](double t) {
    const double s = sigma.value(t), sd = sigma.deriv(t);
    const double g = gamma.value(t), gd = gamma.deriv(t);
    const double W = s * gd - sd * g;
    const double dr = drive ? drive(t) / (2.0 * mass) : 0.0;
    return g * W / (2.0 * s) - dr;
  };
}

Frame TransformData::frame(double t) const {
  Frame f;
  f.t = t;
  const double om2 = profile_.omega_sq(t);
  const double F = force_(t);
  f.sigma = sigma_.value(t);
  f.sigma_dot = sigma_.deriv(t);
  const double w = params_.w;
  f.sigma_ddot = w * w / (f.sigma * f.sigma * f.sigma) - om2 * f.sigma;
  f.gamma = gamma_.value(t);
  f.gamma_dot = gamma_.deriv(t);
  f.W = f.sigma * f.gamma_dot - f.sigma_dot * f.gamma;
  // W' = sigma gamma'' - sigma'' gamma with both second derivatives taken
  // from their equations of motion.
  f.W_dot = f.sigma * F / mass_ -
            w * w * f.gamma / (f.sigma * f.sigma * f.sigma);
  f.xi = xi_(t);
  f.xi_dot = (f.gamma_dot * f.W + f.gamma * f.W_dot) / (2.0 * f.sigma) -
             f.gamma * f.W * f.sigma_dot / (2.0 * f.sigma * f.sigma) -
             F * f.gamma / (2.0 * mass_);
  f.tau = tau_(t);
  return f;
}

double map_coordinates(double x, const Frame& f) {
  return (x + f.gamma) / f.sigma;
}

double map_coordinates(double x, double t, const TransformData& data) {
  return map_coordinates(x, data.frame(t));
}

Complex a_factor(double x, const Frame& f, double mass, double hbar) {
  const double phase =
      mass / hbar *
      (-f.sigma_dot * x * x / (2.0 * f.sigma) + f.W * x / f.sigma + f.xi);
  return std::sqrt(f.sigma) * std::exp(Complex(0.0, phase));
}

Complex a_factor(double x, double t, const TransformData& data) {
  return a_factor(x, data.frame(t), data.mass(), data.hbar());
}

PotentialTerms reconstruct_potential_terms(double t,
                                           const TransformData& data) {
  const Frame f = data.frame(t);
  const double m = data.mass(), w = data.w();
  const double s = f.sigma, s2 = s * s, s4 = s2 * s2;
  PotentialTerms out;
  out.quadratic = 0.5 * m * (-f.sigma_ddot / s + w * w / s4);
  out.linear = m * (f.W_dot / s + w * w * f.gamma / s4);
  // the imaginary part of 2 eta' cancels i hbar sigma'/(m sigma) exactly
  out.constant = 0.5 * m *
                 (2.0 * f.xi_dot - f.W * f.W / s2 +
                  w * w * f.gamma * f.gamma / s4);
  return out;
}

double reconstruct_potential(double x, double t, const TransformData& data) {
  const PotentialTerms v = reconstruct_potential_terms(t, data);
  return v.quadratic * x * x + v.linear * x + v.constant;
}

}  // namespace parosc
