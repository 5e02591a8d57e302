#include "parosc/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "parosc/fourier.hpp"
#include "parosc/parallel.hpp"

namespace parosc {
namespace {

constexpr double kBoundaryAmplitude = 1e-10;

Complex tap(const std::vector<Complex>& f, long j) {
  if (j < 0 || j >= long(f.size())) return Complex(0.0, 0.0);
  return f[std::size_t(j)];
}

std::vector<Complex> d1_stencil4(const std::vector<Complex>& f, double h) {
  std::vector<Complex> out(f.size());
  const double c = 1.0 / (12.0 * h);
  parallel_for(long(f.size()), [&](long j) {
    out[std::size_t(j)] =
        c * (tap(f, j - 2) - 8.0 * tap(f, j - 1) + 8.0 * tap(f, j + 1) -
             tap(f, j + 2));
  });
  return out;
}

std::vector<Complex> d2_stencil4(const std::vector<Complex>& f, double h) {
  std::vector<Complex> out(f.size());
  const double c = 1.0 / (12.0 * h * h);
  parallel_for(long(f.size()), [&](long j) {
    out[std::size_t(j)] =
        c * (-tap(f, j - 2) + 16.0 * tap(f, j - 1) - 30.0 * tap(f, j) +
             16.0 * tap(f, j + 1) - tap(f, j + 2));
  });
  return out;
}

std::vector<Complex> derivative(const std::vector<Complex>& f, double h,
                                int order, DiffMethod method) {
  if (method == DiffMethod::Spectral && is_pow2(int(f.size())))
    return spectral_derivative(f, h, order);
  return order == 1 ? d1_stencil4(f, h) : d2_stencil4(f, h);
}

void require_confined(const QuantumState& s) {
  const double edge =
      std::max(std::abs(s.samples.front()), std::abs(s.samples.back()));
  if (edge > kBoundaryAmplitude)
    throw AccuracyError("state amplitude " + std::to_string(edge) +
                        " at grid edge exceeds 1e-10; widen the grid");
}

}  // namespace

GridOperator make_invariant(double t, const TransformData& data,
                            const PhysConstants& consts, DiffMethod method) {
  const Frame f = data.frame(t);
  const double m = consts.m, hbar = consts.hbar, w = consts.w;
  const double c_pp = f.sigma * f.sigma / (2.0 * m);
  const double c_xx =
      0.5 * m * (f.sigma_dot * f.sigma_dot + w * w / (f.sigma * f.sigma));
  const double c_mix = -0.5 * f.sigma * f.sigma_dot;
  const double c_p = f.sigma * f.W;
  const double c_x =
      m * (w * w * f.gamma / (f.sigma * f.sigma) - f.W * f.sigma_dot);
  const double c_0 =
      0.5 * m * (f.W * f.W + w * w * f.gamma * f.gamma / (f.sigma * f.sigma));

  return GridOperator("I", [=](const QuantumState& s) {
    require_confined(s);
    const double h = s.grid.h();
    const auto d1 = derivative(s.samples, h, 1, method);
    const auto d2 = derivative(s.samples, h, 2, method);
    const Complex ih(0.0, hbar);
    std::vector<Complex> out(s.samples.size());
    parallel_for(long(out.size()), [&](long j) {
      const double x = s.grid.x(int(j));
      const std::size_t u = std::size_t(j);
      // p^2 -> -hbar^2 d2;  (xp+px) -> -i hbar (1 + 2 x d/dx)
      Complex v = -c_pp * hbar * hbar * d2[u];
      v += c_xx * x * x * s.samples[u];
      v += c_mix * (-ih) * (s.samples[u] + 2.0 * x * d1[u]);
      v += c_p * (-ih) * d1[u];
      v += c_x * x * s.samples[u];
      v += c_0 * s.samples[u];
      out[u] = v;
    });
    return out;
  });
}

GridOperator make_ladder(Ladder which, double t, const TransformData& data,
                         const PhysConstants& consts, DiffMethod method) {
  const Frame f = data.frame(t);
  const double m = consts.m, hbar = consts.hbar, w = consts.w;
  const double sgn = (which == Ladder::Lower) ? 1.0 : -1.0;
  const double c_d = sgn * hbar * f.sigma / std::sqrt(2.0 * m);
  const Complex c_x =
      std::sqrt(0.5 * m) * Complex(w / f.sigma, -sgn * f.sigma_dot);
  const Complex c_0 =
      std::sqrt(0.5 * m) * Complex(w * f.gamma / f.sigma, sgn * f.W);

  return GridOperator(which == Ladder::Lower ? "a2" : "a2dag",
                      [=](const QuantumState& s) {
                        require_confined(s);
                        const auto d1 =
                            derivative(s.samples, s.grid.h(), 1, method);
                        std::vector<Complex> out(s.samples.size());
                        parallel_for(long(out.size()), [&](long j) {
                          const std::size_t u = std::size_t(j);
                          out[u] = c_d * d1[u] +
                                   (c_x * s.grid.x(int(j)) + c_0) *
                                       s.samples[u];
                        });
                        return out;
                      });
}

GridOperator make_position() {
  return GridOperator("x", [](const QuantumState& s) {
    std::vector<Complex> out(s.samples.size());
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j] = s.grid.x(int(j)) * s.samples[j];
    return out;
  });
}

GridOperator make_momentum(const PhysConstants& consts, DiffMethod method) {
  const double hbar = consts.hbar;
  return GridOperator("p", [=](const QuantumState& s) {
    auto out = derivative(s.samples, s.grid.h(), 1, method);
    for (auto& v : out) v *= Complex(0.0, -hbar);
    return out;
  });
}

GridOperator make_identity() {
  return GridOperator("1", [](const QuantumState& s) { return s.samples; });
}

QuantumState apply_invariant(const QuantumState& state, double t,
                             const TransformData& data,
                             const PhysConstants& consts, DiffMethod method) {
  return make_invariant(t, data, consts, method)(state);
}

QuantumState apply_ladder(const QuantumState& state, double t, Ladder which,
                          const TransformData& data,
                          const PhysConstants& consts, DiffMethod method) {
  return make_ladder(which, t, data, consts, method)(state);
}

TruncatedMatrix TruncatedMatrix::multiply(const TruncatedMatrix& rhs) const {
  if (rhs.n_basis != n_basis)
    throw std::invalid_argument("matrix dimension mismatch");
  TruncatedMatrix out(n_basis);
  for (int i = 0; i < n_basis; ++i)
    for (int k = 0; k < n_basis; ++k) {
      const Complex a = at(i, k);
      if (a == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < n_basis; ++j) out.at(i, j) += a * rhs.at(k, j);
    }
  return out;
}

TruncatedMatrix TruncatedMatrix::adjoint() const {
  TruncatedMatrix out(n_basis);
  for (int i = 0; i < n_basis; ++i)
    for (int j = 0; j < n_basis; ++j) out.at(i, j) = std::conj(at(j, i));
  return out;
}

TruncatedMatrix TruncatedMatrix::commutator_with(
    const TruncatedMatrix& rhs) const {
  TruncatedMatrix out = multiply(rhs);
  TruncatedMatrix ba = rhs.multiply(*this);
  for (std::size_t k = 0; k < out.entries.size(); ++k)
    out.entries[k] -= ba.entries[k];
  return out;
}

double TruncatedMatrix::max_deviation(const TruncatedMatrix& target,
                                      int edge) const {
  if (target.n_basis != n_basis)
    throw std::invalid_argument("matrix dimension mismatch");
  const int hi = n_basis - edge;
  double worst = 0.0;
  for (int i = 0; i < hi; ++i)
    for (int j = 0; j < hi; ++j)
      worst = std::max(worst, std::abs(at(i, j) - target.at(i, j)));
  return worst;
}

double TruncatedMatrix::max_deviation_from_scaled_identity(Complex scale,
                                                           int edge) const {
  const int hi = n_basis - edge;
  double worst = 0.0;
  for (int i = 0; i < hi; ++i)
    for (int j = 0; j < hi; ++j) {
      const Complex want = (i == j) ? scale : Complex(0.0, 0.0);
      worst = std::max(worst, std::abs(at(i, j) - want));
    }
  return worst;
}

double TruncatedMatrix::hermiticity_defect(int edge) const {
  const int hi = n_basis - edge;
  double worst = 0.0;
  for (int i = 0; i < hi; ++i)
    for (int j = 0; j < hi; ++j)
      worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
  return worst;
}

TruncatedMatrix matrix_elements(const GridOperator& op, double t, int n_basis,
                                const TransformData& data,
                                const PhysConstants& consts, const Grid& grid) {
  if (n_basis < 1 || n_basis > 40)
    throw std::invalid_argument("basis truncation must be in [1, 40]");
  std::vector<QuantumState> basis;
  basis.reserve(std::size_t(n_basis));
  for (int n = 0; n < n_basis; ++n)
    basis.push_back(sample_varphi(n, t, data, consts, grid));

  std::vector<QuantumState> mapped;
  mapped.reserve(std::size_t(n_basis));
  for (int m = 0; m < n_basis; ++m) mapped.push_back(op(basis[std::size_t(m)]));

  TruncatedMatrix out(n_basis);
  parallel_for(long(n_basis) * n_basis, [&](long idx) {
    const int i = int(idx / n_basis);
    const int j = int(idx % n_basis);
    out.at(i, j) =
        inner_product(basis[std::size_t(i)], mapped[std::size_t(j)]).value;
  });
  return out;
}

namespace {

CheckResult make_check(std::string name, double t, double residual,
                       double tol) {
  return CheckResult{std::move(name), t, residual, tol,
                     std::isfinite(residual) && residual <= tol};
}

}  // namespace

std::vector<CheckResult> commutator_check(double t, int n_basis,
                                          const TransformData& data,
                                          const PhysConstants& consts,
                                          const Grid& grid, double tol) {
  const double hw = consts.hbar * consts.w;
  const auto a = matrix_elements(make_ladder(Ladder::Lower, t, data, consts),
                                 t, n_basis, data, consts, grid);
  const auto ad = matrix_elements(make_ladder(Ladder::Raise, t, data, consts),
                                  t, n_basis, data, consts, grid);
  const auto inv = matrix_elements(make_invariant(t, data, consts), t, n_basis,
                                   data, consts, grid);
  const auto xm =
      matrix_elements(make_position(), t, n_basis, data, consts, grid);
  const auto pm =
      matrix_elements(make_momentum(consts), t, n_basis, data, consts, grid);

  std::vector<CheckResult> out;
  out.push_back(make_check(
      "[a2, a2dag] = hbar w", t,
      a.commutator_with(ad).max_deviation_from_scaled_identity(hw), tol));

  auto scaled = [&](const TruncatedMatrix& m, double s) {
    TruncatedMatrix r = m;
    for (auto& v : r.entries) v *= s;
    return r;
  };
  out.push_back(make_check("[I, a2] = -hbar w a2", t,
                           inv.commutator_with(a).max_deviation(
                               scaled(a, -hw)),
                           tol));
  out.push_back(make_check("[I, a2dag] = +hbar w a2dag", t,
                           inv.commutator_with(ad).max_deviation(
                               scaled(ad, hw)),
                           tol));
  out.push_back(make_check(
      "[x, p] = i hbar", t,
      xm.commutator_with(pm).max_deviation_from_scaled_identity(
          Complex(0.0, consts.hbar)),
      tol));
  out.push_back(
      make_check("I hermitian", t, inv.hermiticity_defect(), tol));
  out.push_back(make_check("a2dag = adjoint(a2)", t,
                           ad.max_deviation(a.adjoint()), tol));
  return out;
}

std::vector<CheckResult> factorization_check(double t, int n_basis,
                                             const TransformData& data,
                                             const PhysConstants& consts,
                                             const Grid& grid, double tol) {
  const auto lower = make_ladder(Ladder::Lower, t, data, consts);
  const auto raise = make_ladder(Ladder::Raise, t, data, consts);
  const auto inv = make_invariant(t, data, consts);
  const double half = 0.5 * consts.hbar * consts.w;

  std::vector<CheckResult> out;
  for (int n = 0; n + 4 < n_basis; ++n) {
    const auto phi = sample_varphi(n, t, data, consts, grid);
    const auto lhs = raise(lower(phi));
    const auto rhs = inv(phi);
    QuantumState diff = lhs;
    for (std::size_t j = 0; j < diff.samples.size(); ++j)
      diff.samples[j] += half * phi.samples[j] - rhs.samples[j];
    out.push_back(make_check(
        "(a2dag a2 + hbar w/2) phi_" + std::to_string(n) + " = I phi_" +
            std::to_string(n),
        t, diff.norm(), tol));
  }
  return out;
}

std::vector<CheckResult> quadrature_reconstruction(double t, int n_basis,
                                                   const TransformData& data,
                                                   const PhysConstants& consts,
                                                   const Grid& grid,
                                                   double tol) {
  const Frame f = data.frame(t);
  const double m = consts.m, w = consts.w;
  const auto a = matrix_elements(make_ladder(Ladder::Lower, t, data, consts),
                                 t, n_basis, data, consts, grid);
  const auto ad = matrix_elements(make_ladder(Ladder::Raise, t, data, consts),
                                  t, n_basis, data, consts, grid);
  const auto xm =
      matrix_elements(make_position(), t, n_basis, data, consts, grid);
  const auto pm =
      matrix_elements(make_momentum(consts), t, n_basis, data, consts, grid);

  const double cx = f.sigma / (std::sqrt(2.0 * m) * w);
  const Complex xi(f.sigma_dot / w, -1.0 / f.sigma);  // Xi = -i/sigma + sigma'/w
  const Complex cp = std::sqrt(0.5 * m) * xi;

  TruncatedMatrix x_rec(n_basis);
  TruncatedMatrix p_rec(n_basis);
  for (int i = 0; i < n_basis; ++i)
    for (int j = 0; j < n_basis; ++j) {
      const Complex diag = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      x_rec.at(i, j) = cx * (a.at(i, j) + ad.at(i, j)) - f.gamma * diag;
      p_rec.at(i, j) = cp * a.at(i, j) + std::conj(cp) * ad.at(i, j) -
                       m * f.gamma_dot * diag;
    }

  std::vector<CheckResult> out;
  out.push_back(make_check("x from ladder pair", t,
                           xm.max_deviation(x_rec), tol));
  out.push_back(make_check("p from ladder pair", t,
                           pm.max_deviation(p_rec), tol));
  out.push_back(make_check("<phi_0|x|phi_0> = -gamma", t,
                           std::abs(xm.at(0, 0) - Complex(-f.gamma, 0.0)),
                           tol));
  return out;
}

}  // namespace parosc
