#pragma once

#include "parosc/states.hpp"

namespace parosc {

enum class DiffMethod { Stencil4, Spectral };

// Discrete action of a differential operator on sampled states at fixed t.
class GridOperator {
 public:
  using Action = std::function<std::vector<Complex>(const QuantumState&)>;

  GridOperator(std::string name, Action action)
      : name_(std::move(name)), action_(std::move(action)) {}

  QuantumState operator()(const QuantumState& in) const {
    QuantumState out = in;
    out.samples = action_(in);
    out.label = name_ + "(" + in.label + ")";
    return out;
  }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Action action_;
};

enum class Ladder { Lower, Raise };

// Invariant operator I(t): all six terms including the symmetrized
// -(sigma sigma'/2)(xp + px).
GridOperator make_invariant(double t, const TransformData& data,
                            const PhysConstants& consts,
                            DiffMethod method = DiffMethod::Spectral);

// Deformed boson ladder operators a2(t), a2^dag(t).
GridOperator make_ladder(Ladder which, double t, const TransformData& data,
                         const PhysConstants& consts,
                         DiffMethod method = DiffMethod::Spectral);

GridOperator make_position();
GridOperator make_momentum(const PhysConstants& consts,
                           DiffMethod method = DiffMethod::Spectral);
GridOperator make_identity();

QuantumState apply_invariant(const QuantumState& state, double t,
                             const TransformData& data,
                             const PhysConstants& consts,
                             DiffMethod method = DiffMethod::Spectral);
QuantumState apply_ladder(const QuantumState& state, double t, Ladder which,
                          const TransformData& data,
                          const PhysConstants& consts,
                          DiffMethod method = DiffMethod::Spectral);

// Dense matrix of <phi_n|O|phi_m> on the truncated basis at fixed t.
struct TruncatedMatrix {
  int n_basis = 0;
  std::vector<Complex> entries;  // row-major

  explicit TruncatedMatrix(int n) : n_basis(n), entries(std::size_t(n) * n) {}
  Complex& at(int i, int j) { return entries[std::size_t(i) * n_basis + j]; }
  const Complex& at(int i, int j) const {
    return entries[std::size_t(i) * n_basis + j];
  }

  TruncatedMatrix multiply(const TruncatedMatrix& rhs) const;
  TruncatedMatrix adjoint() const;
  TruncatedMatrix commutator_with(const TruncatedMatrix& rhs) const;

  // max |M_ij - target_ij| over the interior block (top `edge` rows and
  // columns excluded; the truncation corrupts them).
  double max_deviation(const TruncatedMatrix& target, int edge = 4) const;
  double max_deviation_from_scaled_identity(Complex scale, int edge = 4) const;
  double hermiticity_defect(int edge = 4) const;
};

TruncatedMatrix matrix_elements(const GridOperator& op, double t, int n_basis,
                                const TransformData& data,
                                const PhysConstants& consts, const Grid& grid);

struct CheckResult {
  std::string check;
  double t = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// [a2, a2^dag] = hbar w, [I, a2] = -hbar w a2, [I, a2^dag] = +hbar w a2^dag,
// [x, p] = i hbar, all on the interior truncation block.
std::vector<CheckResult> commutator_check(double t, int n_basis,
                                          const TransformData& data,
                                          const PhysConstants& consts,
                                          const Grid& grid,
                                          double tol = 1e-6);

// ||(a2^dag a2 + hbar w/2 - I) phi_n|| for interior n.
std::vector<CheckResult> factorization_check(double t, int n_basis,
                                             const TransformData& data,
                                             const PhysConstants& consts,
                                             const Grid& grid,
                                             double tol = 1e-6);

// x = sigma/(sqrt(2m) w) (a2 + a2^dag) - gamma, and
// p = sqrt(m/2) (Xi a2 + Xi* a2^dag) - m gamma', Xi = -i/sigma + sigma'/w.
std::vector<CheckResult> quadrature_reconstruction(double t, int n_basis,
                                                   const TransformData& data,
                                                   const PhysConstants& consts,
                                                   const Grid& grid,
                                                   double tol = 1e-6);

}  // namespace parosc
