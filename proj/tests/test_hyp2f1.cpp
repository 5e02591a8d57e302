#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "parosc/hyp2f1.hpp"

using parosc::Complex;
using parosc::hyp2f1;
using parosc::hyp2f1_derivative;
using parosc::log_gamma;

namespace {

// Parameters of the left/right tanh-profile solution used throughout:
// mu, g+ = mu + 3/(2*(1/2)^2*2*mu)... frozen as decimals.
constexpr double kMu = 4.2426406871192851464;
constexpr double kGp = 5.6568542494923801952;

Complex f_ref(double u) {
  return hyp2f1(Complex(0.0, -kMu), Complex(1.0, -kMu), Complex(1.0, -kGp),
                Complex(u, 0.0));
}

}  // namespace

TEST_CASE("gamma function spot values") {
  CHECK(std::abs(std::exp(log_gamma(Complex(5.0, 0.0))) - 24.0) < 1e-12);
  CHECK(std::abs(log_gamma(Complex(0.5, 0.0)) -
                 Complex(0.57236494292470008707, 0.0)) < 1e-13);
  // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z) off the real axis
  const Complex z(0.3, 1.7);
  const Complex lhs = log_gamma(z) + log_gamma(Complex(1.0, 0.0) - z);
  const Complex rhs = std::log(M_PI / std::sin(M_PI * z));
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("elementary closed forms") {
  // 2F1(1,1;2;z) = -log(1-z)/z
  CHECK(std::abs(hyp2f1({1, 0}, {1, 0}, {2, 0}, {0.5, 0.0}) -
                 Complex(1.3862943611198906, 0.0)) < 1e-13);
  // 2F1(a,b;b;z) = (1-z)^{-a}
  const Complex a(0.7, -0.4), b(2.3, 0.9), z(0.31, 0.12);
  CHECK(std::abs(hyp2f1(a, b, b, z) - std::pow(Complex(1, 0) - z, -a)) <
        1e-12);
}

TEST_CASE("frozen reference values, complex parameters") {
  // independently computed with 40-digit arithmetic for
  // a = -i mu, b = 1 - i mu, c = 1 - i g+, real argument
  CHECK(std::abs(f_ref(0.25) -
                 Complex(0.641097851335116667, -0.834117957198238734)) < 1e-12);
  CHECK(std::abs(f_ref(0.5) -
                 Complex(-0.639529624923434088, -0.923090498850752038)) < 1e-12);
  CHECK(std::abs(f_ref(0.95) -
                 Complex(-1.20141986223633963, -0.657000523163582611)) < 1e-11);
  CHECK(std::abs(f_ref(0.999) -
                 Complex(0.559728689713704819, -1.29791646851792513)) < 1e-11);
}

TEST_CASE("contiguous relation") {
  // c F(a,b;c) - c F(a+1,b;c) + b z F(a+1,b+1;c+1) = 0
  const Complex a(0.0, -kMu), b(1.0, -kMu), c(1.0, -kGp);
  for (double u : {-0.4, 0.1, 0.45, 0.7, 0.93}) {
    const Complex z(u, 0.0);
    const Complex r = c * hyp2f1(a, b, c, z) -
                      c * hyp2f1(a + Complex(1, 0), b, c, z) +
                      b * z *
                          hyp2f1(a + Complex(1, 0), b + Complex(1, 0),
                                 c + Complex(1, 0), z);
    CHECK(std::abs(r) < 1e-9 * (1.0 + std::abs(c)));
  }
}

TEST_CASE("derivative matches finite differences") {
  const Complex a(0.0, -kMu), b(1.0, -kMu), c(1.0, -kGp);
  const double h = 1e-6;
  for (double u : {-0.3, 0.2, 0.55}) {
    const Complex z(u, 0.0);
    const Complex fd =
        (hyp2f1(a, b, c, {u + h, 0.0}) - hyp2f1(a, b, c, {u - h, 0.0})) /
        (2.0 * h);
    CHECK(std::abs(hyp2f1_derivative(a, b, c, z) - fd) <
          1e-6 * (1.0 + std::abs(fd)));
  }
}
