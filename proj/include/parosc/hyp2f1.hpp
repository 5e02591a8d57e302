#pragma once

#include <complex>
#include <stdexcept>

namespace parosc {

using Complex = std::complex<double>;

struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// log Gamma(z) for complex z (principal branch).
Complex log_gamma(Complex z);

// Gauss hypergeometric function 2F1(a,b;c;z) for complex parameters.
// Direct power series inside |z| <= 0.6; outside, a linear transformation
// (Pfaff z/(z-1), or the z -> 1-z connection formula near the unit point)
// brings the argument back into the convergent region. The supported
// domain is what the tanh-profile argument z = (1 - tanh(kt))/2 visits,
// i.e. the segment (0,1), plus the reflected region Re z < 0.
Complex hyp2f1(Complex a, Complex b, Complex c, Complex z);

// Derivative d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1,b+1;c+1;z).
Complex hyp2f1_derivative(Complex a, Complex b, Complex c, Complex z);

}  // namespace parosc
