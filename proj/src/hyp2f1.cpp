#include "parosc/hyp2f1.hpp"

#include <cmath>
#include <numbers>

namespace parosc {

namespace {

constexpr double kPi = std::numbers::pi;

bool near_nonpositive_integer(Complex z, double tol = 1e-12) {
  if (std::abs(z.imag()) > tol) return false;
  const double r = std::round(z.real());
  return r <= 0.0 + tol && std::abs(z.real() - r) < tol;
}

bool near_integer(Complex z, double tol = 1e-10) {
  return std::abs(z.imag()) < tol &&
         std::abs(z.real() - std::round(z.real())) < tol;
}

// Maclaurin series; converges for |z| < 1, used for |z| <= 0.6.
Complex series(Complex a, Complex b, Complex c, Complex z) {
  Complex term = 1.0, sum = 1.0;
  for (int n = 0; n < 10000; ++n) {
    term *= (a + double(n)) * (b + double(n)) /
            ((c + double(n)) * double(n + 1)) * z;
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum) && n > 3) return sum;
  }
  throw AccuracyError("hyp2f1 series did not converge");
}

Complex cgamma(Complex z) { return std::exp(log_gamma(z)); }

}  // namespace

// Lanczos approximation, g = 7, 9 coefficients; reflection for Re z < 0.5.
Complex log_gamma(Complex z) {
  static const double g = 7.0;
  static const double coef[9] = {0.99999999999980993,
                                 676.5203681218851,
                                 -1259.1392167224028,
                                 771.32342877765313,
                                 -176.61502916214059,
                                 12.507343278686905,
                                 -0.13857109526572012,
                                 9.9843695780195716e-6,
                                 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  Complex x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + double(i));
  const Complex t = z + g + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex hyp2f1(Complex a, Complex b, Complex c, Complex z) {
  if (near_nonpositive_integer(c))
    throw std::domain_error("hyp2f1: c is a nonpositive integer");
  if (z == 0.0) return 1.0;
  if (std::abs(z) <= 0.6) return series(a, b, c, z);

  // Pfaff transformation maps the left half |z/(z-1)| < |z| region back
  // into the series disk; this covers Re z < 0.
  const Complex zp = z / (z - 1.0);
  if (std::abs(zp) <= 0.6)
    return std::pow(1.0 - z, -a) * series(a, c - b, c, zp);

  // Near z = 1 use the connection formula in powers of 1 - z. Requires
  // c - a - b away from the integers, which holds on the tanh-profile
  // segment where c - a - b is a nonzero pure imaginary number.
  const Complex omz = 1.0 - z;
  if (std::abs(omz) < 0.9) {
    const Complex cab = c - a - b;
    if (near_integer(cab))
      throw AccuracyError("hyp2f1: z near 1 with integer c-a-b unsupported");
    const Complex f1 =
        std::exp(log_gamma(c) + log_gamma(cab) - log_gamma(c - a) -
                 log_gamma(c - b)) *
        series(a, b, 1.0 - cab, omz);
    const Complex f2 =
        std::exp(log_gamma(c) + log_gamma(-cab) - log_gamma(a) -
                 log_gamma(b)) *
        std::pow(omz, cab) * series(c - a, c - b, 1.0 + cab, omz);
    return f1 + f2;
  }

  if (std::abs(z) < 1.0) return series(a, b, c, z);
  throw std::domain_error("hyp2f1: argument outside supported domain");
}

Complex hyp2f1_derivative(Complex a, Complex b, Complex c, Complex z) {
  return a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z);
}

}  // namespace parosc
