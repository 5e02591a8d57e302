#include "parosc/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace parosc {

void fft_radix2(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  if (!is_pow2(int(n)))
    throw std::invalid_argument("fft length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / double(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex wcur(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Complex u = a[i + j];
        const Complex v = a[i + j + len / 2] * wcur;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        wcur *= wl;
      }
    }
  }
}

std::vector<Complex> spectral_derivative(const std::vector<Complex>& f,
                                         double h, int order) {
  const std::size_t n = f.size();
  std::vector<Complex> hat = f;
  fft_radix2(hat, -1);
  const double dk = 2.0 * std::numbers::pi / (double(n) * h);
  for (std::size_t j = 0; j < n; ++j) {
    const long m = (j <= n / 2) ? long(j) : long(j) - long(n);
    const double k = dk * double(m);
    if (order == 1) {
      // drop the Nyquist mode: ik there would break conjugate symmetry
      hat[j] *= (j == n / 2) ? Complex(0.0, 0.0) : Complex(0.0, k);
    } else {
      hat[j] *= -k * k;
    }
  }
  fft_radix2(hat, +1);
  const double inv_n = 1.0 / double(n);
  for (auto& v : hat) v *= inv_n;
  return hat;
}

}  // namespace parosc
