#pragma once

#include <complex>
#include <vector>

namespace parosc {

using Complex = std::complex<double>;

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey; sign = -1 forward, +1 inverse.
// The inverse leaves the 1/N factor to the caller.
void fft_radix2(std::vector<Complex>& a, int sign);

// Fourier differentiation (order 1 or 2) on the periodic extension of a
// uniform grid with spacing h; accurate for states that decay below
// roundoff at the edges. Requires a power-of-two length.
std::vector<Complex> spectral_derivative(const std::vector<Complex>& f,
                                         double h, int order);

}  // namespace parosc
