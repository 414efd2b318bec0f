#pragma once

// Lindblad master equation: Liouvillian assembly, steady states and time
// propagation.
//
// Vectorization is column-stacking: vec(rho)[i + j*d] = rho(i, j). Under this
// convention vec(A X B) = (B^T (x) A) vec(X), so
//
//   L = -i (I (x) H - H^T (x) I)
//       + sum_k rate_k ( conj(L_k) (x) L_k
//                        - 1/2 I (x) L_k^dag L_k
//                        - 1/2 (L_k^T conj(L_k)) (x) I ).

#include <cstddef>
#include <span>
#include <vector>

#include "trionsim/operator_core.hpp"

namespace trionsim {

struct DissipationChannel {
  ComplexMatrix op;  // jump operator, dimensionless
  double rate{};     // rad/ns, >= 0
};

class Liouvillian {
 public:
  Liouvillian(std::size_t hilbert_dim, ComplexMatrix matrix);

  std::size_t hilbert_dim() const noexcept { return hilbert_dim_; }
  std::size_t dim() const noexcept { return hilbert_dim_ * hilbert_dim_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  /// L(rho) as a d x d matrix.
  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  std::size_t hilbert_dim_;
  ComplexMatrix matrix_;
};

/// Hermitian, unit-trace, positive semidefinite state. Validated on
/// construction against `tol`.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, double tol = 1e-9);

  /// |i><i|
  static DensityMatrix basis_state(std::size_t dim, std::size_t i);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double population(std::size_t i) const { return m_(i, i).real(); }

 private:
  ComplexMatrix m_;
};

ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, std::size_t dim);

/// Row functional t with t . vec(X) = tr(X).
Eigen::RowVectorXcd trace_functional(std::size_t dim);

/// Row functional u with u . vec(X) = tr(A X).
Eigen::RowVectorXcd observable_functional(const ComplexMatrix& a);

Liouvillian build_liouvillian(const ComplexMatrix& hamiltonian,
                              std::span<const DissipationChannel> channels);

/// Unique stationary state, from the Liouvillian with one row replaced by the
/// trace functional. Throws DegenerateSteadyStateError if the kernel is not
/// one-dimensional.
DensityMatrix steady_state(const Liouvillian& l);

/// Integrates d/dt x = L x for an arbitrary vectorized operator x with an
/// adaptive Dormand-Prince 5(4) pair. Local error per step is kept below
/// `tol` (max-norm). Returns x(t) at each entry of `times`, which must be
/// ascending and non-negative; x0 is the value at t = 0.
std::vector<ComplexVector> evolve(const Liouvillian& l, const ComplexVector& x0,
                                  std::span<const double> times, double tol,
                                  std::size_t max_steps = 20'000'000);

std::vector<DensityMatrix> propagate(const DensityMatrix& rho0, const Liouvillian& l,
                                     std::span<const double> times, double tol);

Complex expectation(const DensityMatrix& rho, const ComplexMatrix& a);

}  // namespace trionsim
