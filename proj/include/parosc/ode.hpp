#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace parosc {

// Right-hand side of a first-order system y' = f(t, y).
using OdeRhs = std::function<void(double t, const std::vector<double>& y,
                                  std::vector<double>& dy)>;

// Dense-output solution of an adaptive Dormand-Prince 5(4) integration.
// Between accepted steps each component is interpolated with a cubic
// Hermite polynomial built from the stored value and derivative, so the
// caller gets y and y' at arbitrary t inside the integration span.
class DenseOdeSolution {
 public:
  DenseOdeSolution(std::vector<double> t, std::vector<std::vector<double>> y,
                   std::vector<std::vector<double>> dy)
      : t_(std::move(t)), y_(std::move(y)), dy_(std::move(dy)) {}

  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }
  std::size_t dim() const { return y_.front().size(); }
  std::size_t steps() const { return t_.size() - 1; }

  // Value of component i at time t.
  double value(std::size_t i, double t) const {
    const auto [k, s] = locate(t);
    const double h = t_[k + 1] - t_[k];
    return hermite(y_[k][i], h * dy_[k][i], y_[k + 1][i], h * dy_[k + 1][i], s);
  }

  // Derivative of component i (interpolated from the stored slopes).
  double derivative(std::size_t i, double t) const {
    const auto [k, s] = locate(t);
    const double h = t_[k + 1] - t_[k];
    const double d0 = dy_[k][i], d1 = dy_[k + 1][i];
    const double dv = (y_[k + 1][i] - y_[k][i]) / h;
    // derivative of the cubic Hermite interpolant
    const double a = d0, b = 3.0 * dv - 2.0 * d0 - d1, c = d0 + d1 - 2.0 * dv;
    return a + 2.0 * b * s + 3.0 * c * s * s;
  }

  const std::vector<double>& nodes() const { return t_; }
  const std::vector<double>& node_state(std::size_t k) const { return y_[k]; }

 private:
  static double hermite(double y0, double m0, double y1, double m1, double s) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
  }

  std::pair<std::size_t, double> locate(double t) const {
    const double lo = t_.front(), hi = t_.back();
    const double slack = 1e-9 * (1.0 + std::abs(hi - lo));
    if (t < lo - slack || t > hi + slack)
      throw std::out_of_range("dense output evaluated outside span");
    t = std::clamp(t, lo, hi);
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t k = (it == t_.begin()) ? 0 : std::size_t(it - t_.begin()) - 1;
    if (k >= t_.size() - 1) k = t_.size() - 2;
    const double h = t_[k + 1] - t_[k];
    return {k, (t - t_[k]) / h};
  }

  std::vector<double> t_;
  std::vector<std::vector<double>> y_;
  std::vector<std::vector<double>> dy_;
};

struct OdeOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double max_step = 0.02;  // keeps the cubic dense output well below 1e-7
  std::size_t max_steps = 4000000;
};

// Adaptive Dormand-Prince 5(4) from t0 to t1 (either direction).
DenseOdeSolution integrate_ode(const OdeRhs& rhs, std::vector<double> y0,
                               double t0, double t1,
                               const OdeOptions& opt = {});

// Antiderivative of f from t_ref, tabulated once over [t_min, t_max] and
// corrected by a short quadrature from the nearest node. Keeps repeated
// evaluations cheap when f itself is expensive.
std::function<double(double)> cached_antiderivative(
    std::function<double(double)> f, double t_ref, double t_min, double t_max,
    double tol = 1e-13);

}  // namespace parosc
