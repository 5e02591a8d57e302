#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace parosc {

// Adaptive Simpson integration of a smooth real- or complex-valued function.
// Tolerance is absolute; the interval is split until the local Richardson
// estimate drops below the budget assigned to it.
namespace detail {

template <typename F, typename T>
T adaptive_simpson_rec(const F& f, double a, double b, T fa, T fm, T fb,
                       T whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const T flm = f(lm);
  const T frm = f(rm);
  const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const T delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("adaptive quadrature: max depth reached");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
auto integrate(const F& f, double a, double b, double tol = 1e-12)
    -> decltype(f(a)) {
  using T = decltype(f(a));
  if (a == b) return T{};
  const double sign = (b >= a) ? 1.0 : -1.0;
  if (sign < 0) std::swap(a, b);
  const T fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return sign * detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole,
                                             std::max(tol, 1e-15), 48);
}

}  // namespace parosc
