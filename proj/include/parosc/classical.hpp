#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>

#include "parosc/hyp2f1.hpp"

namespace parosc {

// Squared frequency profile Omega^2(t) of the parametric oscillator.
class FrequencyProfile {
 public:
  enum class Kind { Zero, Constant, TanhStep, Custom };

  static FrequencyProfile zero();
  static FrequencyProfile constant(double omega0);
  // Omega^2(t) = omega1 + omega2 * tanh(k t), omega1 > omega2 > 0, k > 0.
  static FrequencyProfile tanh_step(double omega1, double omega2, double k);
  static FrequencyProfile custom(std::function<double(double)> omega_sq);

  Kind kind() const { return kind_; }
  double omega_sq(double t) const;

  double omega0() const { return omega0_; }
  double omega1() const { return omega1_; }
  double omega2() const { return omega2_; }
  double steepness() const { return k_; }

 private:
  FrequencyProfile() = default;
  Kind kind_ = Kind::Zero;
  double omega0_ = 0.0;
  double omega1_ = 0.0, omega2_ = 0.0, k_ = 0.0;
  std::function<double(double)> custom_;
};

// Time-dependent driving force F(t); zero by default.
class DrivingForce {
 public:
  DrivingForce() = default;
  explicit DrivingForce(std::function<double(double)> f)
      : f_(std::move(f)), zero_(false) {}

  double operator()(double t) const { return zero_ ? 0.0 : f_(t); }
  bool is_zero() const { return zero_; }

 private:
  std::function<double(double)> f_;
  bool zero_ = true;
};

// A real function of time together with its derivative.
struct RealFunc {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

// Two linearly independent real solutions of q'' + Omega^2(t) q = 0.
struct ClassicalPair {
  RealFunc q1;
  RealFunc q2;
  double W0 = 0.0;  // q1 q2' - q1' q2, constant in t
  double t_min = 0.0;
  double t_max = 0.0;

  double wronskian(double t) const {
    return q1.value(t) * q2.deriv(t) - q1.deriv(t) * q2.value(t);
  }
};

struct InitialConditions {
  double q = 0.0;
  double qdot = 0.0;
};

// Numerical pair by adaptive Runge-Kutta integration with dense output.
// Default ICs at t0: q1 = 1, q1' = 0, q2 = 0, q2' = W0, so that the
// Wronskian equals W0 exactly at t0. Throws if the monitored Wronskian
// drifts by more than 1e-6 relative over the span.
ClassicalPair solve_homogeneous(
    const FrequencyProfile& profile, double t0, double t_min, double t_max,
    double W0 = 1.0, std::optional<InitialConditions> ic1 = std::nullopt,
    std::optional<InitialConditions> ic2 = std::nullopt);

// Closed-form pair for the Zero, Constant and TanhStep profiles. For the
// tanh profile q1 = Re[q~1], q2 = Im[q~1] with q~1 the hypergeometric
// solution, and W0 = k g+.
ClassicalPair analytic_pair(const FrequencyProfile& profile,
                            double t_min = -50.0, double t_max = 50.0);

// Parameters of the tanh-profile closed form.
struct TanhStepConstants {
  double mu;
  double g_plus;
  double g_minus;
};
TanhStepConstants tanh_step_constants(const FrequencyProfile& profile);

// Complex solution q~1(t) of the tanh profile and its time derivative.
Complex tanh_step_complex_solution(const FrequencyProfile& profile, double t);
Complex tanh_step_complex_derivative(const FrequencyProfile& profile,
                                     double t);

// Particular solution of q'' + Omega^2 q = F/m by variation of parameters,
// gamma_p(t) = (1/(m W0)) [ q2 Int(q1 F) - q1 Int(q2 F) ], integrals from
// t_ref.
RealFunc particular_solution(const DrivingForce& force,
                             const ClassicalPair& pair, double mass,
                             double t_ref = 0.0);

}  // namespace parosc
