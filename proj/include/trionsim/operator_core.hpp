#pragma once

// Dense complex linear algebra and Hilbert-space bookkeeping.
//
// All operators are dimensionless; rates and angular frequencies are carried
// separately in rad/ns (a quantity quoted as "2pi x X GHz" is stored as 2*pi*X).

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace trionsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Ordered basis of named states. Index order is fixed at construction.
class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<std::string> labels);

  /// Basis (s, p, t) of the trion model: s = 0, p = 1, t = 2.
  static HilbertSpace trion();

  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t index_of(std::string_view label) const;

  bool operator==(const HilbertSpace&) const = default;

 private:
  std::vector<std::string> labels_;
};

/// |i><j| on `space`.
ComplexMatrix projector(const HilbertSpace& space, std::size_t i, std::size_t j);

ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& a, double tol);

/// Maximum absolute row sum.
double inf_norm(const ComplexMatrix& a);
double inf_norm(const ComplexVector& v);

/// Solves A x = b with full-pivot LU.
///
/// Throws SingularMatrixError when the smallest pivot falls below
/// 1e-14 * ||A||_inf, ArgumentError on shape mismatch.
ComplexVector solve_linear(const ComplexMatrix& a, const ComplexVector& b);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are orthonormal eigenvectors
};

/// Eigen-decomposition of a Hermitian matrix; rejects inputs that are not
/// Hermitian within 1e-10 (relative to max(1, ||A||_inf)).
HermitianEigen eig_hermitian(const ComplexMatrix& a);

}  // namespace trionsim
