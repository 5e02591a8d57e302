#include "parosc/ode.hpp"

#include <cmath>
#include <memory>

#include "parosc/quadrature.hpp"

namespace parosc {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

DenseOdeSolution integrate_ode(const OdeRhs& rhs, std::vector<double> y0,
                               double t0, double t1, const OdeOptions& opt) {
  const std::size_t n = y0.size();
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  std::vector<double> ts;
  std::vector<std::vector<double>> ys, dys;

  std::vector<double> y = y0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> ytmp(n), ynew(n), err(n);

  double t = t0;
  rhs(t, y, k1);
  ts.push_back(t);
  ys.push_back(y);
  dys.push_back(k1);

  double h = std::min(opt.max_step, span > 0 ? span : opt.max_step);
  std::size_t nsteps = 0;

  while (dir * (t1 - t) > 0.0) {
    if (++nsteps > opt.max_steps)
      throw std::runtime_error("ODE integration exceeded the step budget");
    h = std::min(h, std::abs(t1 - t));
    const double hs = dir * h;

    auto stage = [&](std::vector<double>& out, auto&&... terms) {
      for (std::size_t i = 0; i < n; ++i)
        out[i] = y[i] + hs * (... + terms(i));
    };
    stage(ytmp, [&](std::size_t i) { return a21 * k1[i]; });
    rhs(t + c2 * hs, ytmp, k2);
    stage(ytmp, [&](std::size_t i) { return a31 * k1[i]; },
          [&](std::size_t i) { return a32 * k2[i]; });
    rhs(t + c3 * hs, ytmp, k3);
    stage(ytmp, [&](std::size_t i) { return a41 * k1[i]; },
          [&](std::size_t i) { return a42 * k2[i]; },
          [&](std::size_t i) { return a43 * k3[i]; });
    rhs(t + c4 * hs, ytmp, k4);
    stage(ytmp, [&](std::size_t i) { return a51 * k1[i]; },
          [&](std::size_t i) { return a52 * k2[i]; },
          [&](std::size_t i) { return a53 * k3[i]; },
          [&](std::size_t i) { return a54 * k4[i]; });
    rhs(t + c5 * hs, ytmp, k5);
    stage(ytmp, [&](std::size_t i) { return a61 * k1[i]; },
          [&](std::size_t i) { return a62 * k2[i]; },
          [&](std::size_t i) { return a63 * k3[i]; },
          [&](std::size_t i) { return a64 * k4[i]; },
          [&](std::size_t i) { return a65 * k5[i]; });
    rhs(t + hs, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                             b5 * k5[i] + b6 * k6[i]);
    rhs(t + hs, ynew, k7);

    double err_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opt.abs_tol +
          opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err_norm = std::max(err_norm, std::abs(e) / sc);
    }

    if (err_norm <= 1.0) {
      t += hs;
      y = ynew;
      k1 = k7;  // FSAL
      ts.push_back(t);
      ys.push_back(y);
      dys.push_back(k1);
    }
    const double fac =
        std::clamp(0.9 * std::pow(std::max(err_norm, 1e-16), -0.2), 0.2, 5.0);
    h = std::min(h * fac, opt.max_step);
    if (!(h > 0.0) || !std::isfinite(err_norm))
      throw std::runtime_error("ODE step size underflow (non-finite rhs?)");
  }

  if (dir < 0.0) {  // locate() needs ascending nodes
    std::reverse(ts.begin(), ts.end());
    std::reverse(ys.begin(), ys.end());
    std::reverse(dys.begin(), dys.end());
  }
  return DenseOdeSolution(std::move(ts), std::move(ys), std::move(dys));
}

std::function<double(double)> cached_antiderivative(
    std::function<double(double)> f, double t_ref, double t_min, double t_max,
    double tol) {
  auto fp = std::make_shared<std::function<double(double)>>(std::move(f));
  OdeRhs rhs = [fp](double t, const std::vector<double>&,
                    std::vector<double>& dy) { dy[0] = (*fp)(t); };
  auto fwd = std::make_shared<DenseOdeSolution>(
      integrate_ode(rhs, {0.0}, t_ref, t_max));
  auto bwd = std::make_shared<DenseOdeSolution>(
      integrate_ode(rhs, {0.0}, t_ref, t_min));
  return [fp, fwd, bwd, t_ref, tol](double t) {
    const DenseOdeSolution& side = (t >= t_ref) ? *fwd : *bwd;
    const auto& ts = side.nodes();
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    std::size_t k = (it == ts.begin()) ? 0 : std::size_t(it - ts.begin()) - 1;
    if (k + 1 < ts.size() && std::abs(ts[k + 1] - t) < std::abs(t - ts[k]))
      ++k;
    const double y = side.node_state(k)[0];
    if (ts[k] == t) return y;
    return y + integrate(*fp, ts[k], t, tol);
  };
}

}  // namespace parosc
