#pragma once

#include <complex>

#include "parosc/classical.hpp"

namespace parosc {

// Parameters {a, b, c} of the Ermakov combination
// sigma^2 = a q1^2 + b q1 q2 + c q2^2 with b derived from the positivity
// constraint b^2 - 4ac = -4 w^2 / W0^2 (nonnegative root).
struct ErmakovParams {
  double a = 1.0;
  double c = 1.0;
  double w = 1.0;   // stationary reference frequency
  double W0 = 1.0;  // Wronskian of the pair in use
  double b = 0.0;   // derived

  static ErmakovParams make(double a, double c, double w, double W0);
};

// All transform quantities evaluated at one time.
struct Frame {
  double t = 0.0;
  double sigma = 1.0, sigma_dot = 0.0, sigma_ddot = 0.0;
  double gamma = 0.0, gamma_dot = 0.0;
  double W = 0.0;       // sigma gamma' - sigma' gamma
  double W_dot = 0.0;
  double xi = 0.0, xi_dot = 0.0;
  double tau = 0.0;
};

// sigma and its derivative from the classical pair. Throws if the
// parameter constraint fails or sigma^2 is not positive.
RealFunc build_sigma(const ClassicalPair& pair, const ErmakovParams& params);

// tau(t) = int_{t_ref}^t dt'/sigma^2 by adaptive quadrature.
std::function<double(double)> build_tau(const RealFunc& sigma, double t_ref);

// gamma = gamma1 q1 + gamma2 q2 + gamma_p and its derivative.
RealFunc build_gamma(const ClassicalPair& pair, double gamma1, double gamma2,
                     const RealFunc& gamma_p);

// xi(t) = gamma W / (2 sigma) - (1/2m) int_{t_ref}^t F gamma.
std::function<double(double)> build_xi(const RealFunc& sigma,
                                       const RealFunc& gamma,
                                       const DrivingForce& force, double mass,
                                       double t_ref);

// The arctan closed form of tau; has branch jumps at zeros of q1, so the
// quadrature route above is authoritative and this is a cross-check.
double tau_closed_form(double t, const ClassicalPair& pair,
                       const ErmakovParams& params);

// Assembled point transformation: everything required to deform states.
class TransformData {
 public:
  TransformData(FrequencyProfile profile, DrivingForce force,
                ClassicalPair pair, ErmakovParams params, double gamma1,
                double gamma2, double mass, double hbar, double t_ref = 0.0);

  Frame frame(double t) const;

  double sigma(double t) const { return sigma_.value(t); }
  double sigma_dot(double t) const { return sigma_.deriv(t); }
  double gamma(double t) const { return gamma_.value(t); }
  double gamma_dot(double t) const { return gamma_.deriv(t); }
  double tau(double t) const { return tau_(t); }
  double xi(double t) const { return xi_(t); }

  const FrequencyProfile& profile() const { return profile_; }
  const DrivingForce& force() const { return force_; }
  const ClassicalPair& pair() const { return pair_; }
  const ErmakovParams& params() const { return params_; }
  double mass() const { return mass_; }
  double hbar() const { return hbar_; }
  double w() const { return params_.w; }
  double t_ref() const { return t_ref_; }
  double gamma1() const { return gamma1_; }
  double gamma2() const { return gamma2_; }

 private:
  FrequencyProfile profile_;
  DrivingForce force_;
  ClassicalPair pair_;
  ErmakovParams params_;
  double gamma1_, gamma2_;
  double mass_, hbar_, t_ref_;
  RealFunc gamma_p_;
  RealFunc sigma_;
  RealFunc gamma_;
  std::function<double(double)> tau_;
  std::function<double(double)> xi_;
};

// X(x,t) = (x + gamma)/sigma.
double map_coordinates(double x, double t, const TransformData& data);
double map_coordinates(double x, const Frame& f);

// Deformation factor A(x,t) = sqrt(sigma) exp[i(m/hbar)(-sigma' x^2/(2 sigma)
// + W x / sigma + xi)].
Complex a_factor(double x, double t, const TransformData& data);
Complex a_factor(double x, const Frame& f, double mass, double hbar);

// The potential recovered from the transform functions; the defining
// identity makes it equal (m/2) Omega^2 x^2 + F x with zero constant term.
struct PotentialTerms {
  double quadratic = 0.0;  // coefficient of x^2
  double linear = 0.0;     // coefficient of x
  double constant = 0.0;
};
PotentialTerms reconstruct_potential_terms(double t, const TransformData& data);
double reconstruct_potential(double x, double t, const TransformData& data);

}  // namespace parosc
